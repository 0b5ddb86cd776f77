#include "qfrob/padic.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace qfrob {

long vp(const ZZ& n, long p) {
    if (n == 0) throw bad_argument_error("vp: argument is zero");
    ZZ reduced;
    ZZ pz(p);
    return static_cast<long>(mpz_remove(reduced.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t()));
}

long vp(const QQ& q, long p) {
    if (q == 0) throw bad_argument_error("vp: argument is zero");
    return vp(ZZ(q.get_num()), p) - vp(ZZ(q.get_den()), p);
}

namespace {

bool is_admissible_prime(long p) {
    if (p < 3) return false;
    ZZ pz(p);
    return mpz_probab_prime_p(pz.get_mpz_t(), 40) != 0;
}

ZZ mod_nonneg(const ZZ& a, const ZZ& m) {
    ZZ r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

ZZ mod_inverse(const ZZ& a, const ZZ& m) {
    ZZ r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw bad_argument_error("mod_inverse: not invertible");
    return r;
}

} // namespace

Context::Context(long p, int digits, int margin) : p_(p), digits_(digits), margin_(margin) {
    if (!is_admissible_prime(p))
        throw bad_prime_error("prime must be an odd prime, got " + std::to_string(p));
    if (digits < 1) throw bad_argument_error("digits must be >= 1");
    if (margin < 0) throw bad_argument_error("margin must be >= 0");
    const long cap = static_cast<long>(working()) + 64;
    powers_.reserve(static_cast<size_t>(cap) + 1);
    ZZ v(1);
    for (long k = 0; k <= cap; ++k) {
        powers_.push_back(v);
        v *= p_;
    }
}

const ZZ& Context::pk(long k) const {
    if (k < 0 || static_cast<size_t>(k) >= powers_.size())
        throw bad_argument_error("Context::pk: exponent out of cached range: " + std::to_string(k));
    return powers_[static_cast<size_t>(k)];
}

PadicScalar PadicScalar::zero(const Context& ctx) {
    return PadicScalar(ctx, Kind::exact_zero, 0, ZZ(0), 0);
}

PadicScalar PadicScalar::zero_mod(const Context& ctx, long abs_bound) {
    return PadicScalar(ctx, Kind::inexact_zero, abs_bound, ZZ(0), 0);
}

PadicScalar PadicScalar::make_value(const Context& ctx, long v, ZZ unit, long r) {
    if (r <= 0) return zero_mod(ctx, v);
    ZZ u = mod_nonneg(unit, ctx.pk(r));
    if (u == 0) return zero_mod(ctx, v + r);
    long s = vp(u, ctx.p());
    if (s > 0) {
        mpz_divexact(u.get_mpz_t(), u.get_mpz_t(), ctx.pk(s).get_mpz_t());
        v += s;
        r -= s;
    }
    return PadicScalar(ctx, Kind::value, v, std::move(u), r);
}

PadicScalar PadicScalar::from_rational(const QQ& q, const Context& ctx) {
    if (q == 0) return zero(ctx);
    ZZ num(q.get_num()), den(q.get_den());
    const long p = ctx.p();
    ZZ tmp;
    long vn = mpz_remove(tmp.get_mpz_t(), num.get_mpz_t(), ZZ(p).get_mpz_t());
    num = tmp;
    long vd = mpz_remove(tmp.get_mpz_t(), den.get_mpz_t(), ZZ(p).get_mpz_t());
    den = tmp;
    const long r = ctx.working();
    const ZZ& m = ctx.pk(r);
    ZZ u = mod_nonneg(num * mod_inverse(den, m), m);
    return PadicScalar(ctx, Kind::value, vn - vd, std::move(u), r);
}

PadicScalar PadicScalar::from_long(long n, const Context& ctx) {
    return from_rational(QQ(n), ctx);
}

long PadicScalar::valuation() const {
    switch (kind_) {
    case Kind::value: return v_;
    case Kind::exact_zero: return kValInf;
    default:
        throw precision_exhausted_error(
            "valuation undetermined: value is zero to precision p^" + std::to_string(v_));
    }
}

long PadicScalar::valuation_floor() const {
    return kind_ == Kind::exact_zero ? kValInf : v_;
}

long PadicScalar::known_digits() const {
    switch (kind_) {
    case Kind::value: return r_;
    case Kind::exact_zero: return kValInf;
    default: return 0;
    }
}

ZZ PadicScalar::unit_mod(long k) const {
    if (kind_ != Kind::value) return ZZ(0);
    return mod_nonneg(unit_, ctx_->pk(std::min(k, r_)));
}

namespace {
void require_same_context(const PadicScalar& x, const PadicScalar& y) {
    if (&x.context() != &y.context())
        throw bad_argument_error("operands built from different contexts");
}
} // namespace

PadicScalar PadicScalar::add(const PadicScalar& y) const {
    require_same_context(*this, y);
    const PadicScalar& x = *this;
    if (x.kind_ == Kind::exact_zero) return y;
    if (y.kind_ == Kind::exact_zero) return x;
    if (x.kind_ == Kind::inexact_zero && y.kind_ == Kind::inexact_zero)
        return zero_mod(*ctx_, std::min(x.v_, y.v_));
    if (x.kind_ == Kind::inexact_zero || y.kind_ == Kind::inexact_zero) {
        const PadicScalar& val = (x.kind_ == Kind::value) ? x : y;
        const long bound = (x.kind_ == Kind::value) ? y.v_ : x.v_;
        const long abs = std::min(val.v_ + val.r_, bound);
        if (val.v_ >= abs) return zero_mod(*ctx_, abs);
        return make_value(*ctx_, val.v_, val.unit_, abs - val.v_);
    }
    const long vmin = std::min(x.v_, y.v_);
    const long abs = std::min(x.v_ + x.r_, y.v_ + y.r_);
    // abs > vmin always: both operands carry at least one digit. An operand
    // shifted to or beyond the result window vanishes mod p^(abs - vmin), so
    // its shift is never materialized (the gap can far exceed the cached
    // powers when valuations drift apart).
    const long window = abs - vmin;
    const ZZ& m = ctx_->pk(window);
    ZZ s(0);
    if (x.v_ - vmin < window) s += x.unit_ * ctx_->pk(x.v_ - vmin);
    if (y.v_ - vmin < window) s += y.unit_ * ctx_->pk(y.v_ - vmin);
    s = mod_nonneg(s, m);
    if (s == 0) return zero_mod(*ctx_, abs);
    return make_value(*ctx_, vmin, std::move(s), abs - vmin);
}

PadicScalar PadicScalar::neg() const {
    if (kind_ != Kind::value) return *this;
    return PadicScalar(*ctx_, Kind::value, v_, ctx_->pk(r_) - unit_, r_);
}

PadicScalar PadicScalar::sub(const PadicScalar& y) const { return add(y.neg()); }

PadicScalar PadicScalar::mul(const PadicScalar& y) const {
    require_same_context(*this, y);
    if (kind_ == Kind::exact_zero || y.kind_ == Kind::exact_zero) return zero(*ctx_);
    if (kind_ == Kind::inexact_zero && y.kind_ == Kind::inexact_zero)
        return zero_mod(*ctx_, v_ + y.v_);
    if (kind_ == Kind::inexact_zero) return zero_mod(*ctx_, v_ + y.v_);
    if (y.kind_ == Kind::inexact_zero) return zero_mod(*ctx_, y.v_ + v_);
    const long r = std::min(r_, y.r_);
    ZZ u = mod_nonneg(unit_ * y.unit_, ctx_->pk(r));
    return PadicScalar(*ctx_, Kind::value, v_ + y.v_, std::move(u), r);
}

PadicScalar PadicScalar::div(const PadicScalar& y) const {
    require_same_context(*this, y);
    if (y.kind_ == Kind::exact_zero) throw division_by_zero_error("division by exact zero");
    if (y.kind_ == Kind::inexact_zero)
        throw precision_exhausted_error("divisor is zero to working precision; unit unknown");
    if (kind_ == Kind::exact_zero) return zero(*ctx_);
    if (kind_ == Kind::inexact_zero) return zero_mod(*ctx_, v_ - y.v_);
    const long r = std::min(r_, y.r_);
    const ZZ& m = ctx_->pk(r);
    ZZ u = mod_nonneg(unit_ * mod_inverse(y.unit_, m), m);
    return PadicScalar(*ctx_, Kind::value, v_ - y.v_, std::move(u), r);
}

PadicScalar PadicScalar::pow_ui(unsigned long e) const {
    PadicScalar acc = from_long(1, *ctx_);
    PadicScalar base = *this;
    while (e > 0) {
        if (e & 1UL) acc = acc.mul(base);
        e >>= 1UL;
        if (e > 0) base = base.mul(base);
    }
    return acc;
}

PadicScalar PadicScalar::truncate_abs(long abs) const {
    switch (kind_) {
    case Kind::exact_zero: return zero_mod(*ctx_, abs);
    case Kind::inexact_zero: return zero_mod(*ctx_, std::min(v_, abs));
    default:
        if (v_ >= abs) return zero_mod(*ctx_, abs);
        return make_value(*ctx_, v_, unit_, std::min(r_, abs - v_));
    }
}

std::vector<int> PadicScalar::digits(int k) const {
    if (k <= 0) return {};
    if (kind_ == Kind::exact_zero) return std::vector<int>(static_cast<size_t>(k), 0);
    if (kind_ == Kind::inexact_zero)
        throw precision_exhausted_error("no digits known: value is zero to precision");
    if (r_ < k)
        throw precision_exhausted_error("requested " + std::to_string(k) + " digits, only " +
                                        std::to_string(r_) + " known");
    std::vector<int> out;
    out.reserve(static_cast<size_t>(k));
    ZZ u = unit_;
    for (int i = 0; i < k; ++i) {
        ZZ d = u % ctx_->p();
        out.push_back(static_cast<int>(d.get_si()));
        u /= ctx_->p();
    }
    return out;
}

bool agree_to(const PadicScalar& x, const PadicScalar& y, long k) {
    if (k <= 0) return true;
    if (x.known_digits() < k || y.known_digits() < k)
        throw precision_exhausted_error("agree_to: operands carry fewer than " +
                                        std::to_string(k) + " known digits");
    if (x.is_exact_zero() && y.is_exact_zero()) return true;
    const long vmin = std::min(x.valuation_floor(), y.valuation_floor());
    return x.sub(y).valuation_floor() >= vmin + k;
}

long agree_digits(const PadicScalar& x, const PadicScalar& y) {
    const long cap = std::min(x.known_digits(), y.known_digits());
    if (x.is_exact_zero() && y.is_exact_zero()) return cap;
    const long vmin = std::min(x.valuation_floor(), y.valuation_floor());
    const long vd = x.sub(y).valuation_floor();
    if (vd >= kValInf) return cap;
    return std::clamp(vd - vmin, 0L, cap);
}

bool is_zero_to(const PadicScalar& x, long k) { return x.valuation_floor() >= k; }

PadicScalar teichmuller(long a, const Context& ctx) {
    const long p = ctx.p();
    long a0 = a % p;
    if (a0 < 0) a0 += p;
    if (a0 == 0) throw not_coprime_error("teichmuller: argument divisible by p");
    const long r = ctx.working();
    const ZZ& m = ctx.pk(r);
    ZZ x = mod_nonneg(ZZ(a), m);
    for (long i = 0; i <= r + 1; ++i) {
        ZZ next;
        mpz_powm_ui(next.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p), m.get_mpz_t());
        if (next == x) break;
        x = next;
    }
    return PadicScalar::from_rational(QQ(x), ctx);
}

namespace {

const char* kSuperscripts[10] = {"⁰", "¹", "²", "³", "⁴",
                                 "⁵", "⁶", "⁷", "⁸", "⁹"};

std::string superscript(long e) {
    std::string dec = std::to_string(e);
    std::string out;
    for (char c : dec) out += kSuperscripts[c - '0'];
    return out;
}

long parse_superscript(const std::string& s, size_t& pos) {
    std::string dec;
    while (pos < s.size()) {
        bool matched = false;
        for (int d = 0; d < 10; ++d) {
            size_t len = std::strlen(kSuperscripts[d]);
            if (s.compare(pos, len, kSuperscripts[d]) == 0) {
                dec += static_cast<char>('0' + d);
                pos += len;
                matched = true;
                break;
            }
        }
        if (!matched) break;
    }
    if (dec.empty()) throw bad_argument_error("parse_digits: expected superscript exponent");
    return std::stol(dec);
}

} // namespace

std::string render_digits(const PadicScalar& x, int k) {
    const Context& ctx = x.context();
    if (x.is_exact_zero()) return "0";
    if (x.kind() == PadicScalar::Kind::inexact_zero) {
        std::ostringstream os;
        os << "O(" << ctx.p() << "^" << x.valuation_floor() << ")";
        return os.str();
    }
    std::vector<int> ds = x.digits(k);
    std::ostringstream os;
    if (x.valuation() != 0) os << ctx.p() << "^" << x.valuation() << " · ";
    for (int i = 0; i < k; ++i) {
        if (i > 0) os << " + ";
        os << ds[static_cast<size_t>(i)];
        if (i == 1) os << "·" << ctx.p();
        if (i >= 2) os << "·" << ctx.p() << superscript(i);
    }
    return os.str();
}

PadicScalar parse_digits(const std::string& s, const Context& ctx) {
    if (s == "0") return PadicScalar::zero(ctx);
    std::string body = s;
    long v = 0;
    const std::string psep = "^";
    const std::string vsep = " · ";
    // "p^v · digits" prefix
    std::string prefix = std::to_string(ctx.p()) + psep;
    if (body.compare(0, prefix.size(), prefix) == 0) {
        size_t end = body.find(vsep);
        if (end != std::string::npos) {
            v = std::stol(body.substr(prefix.size(), end - prefix.size()));
            body = body.substr(end + vsep.size());
        }
    }
    ZZ unit(0);
    long count = 0;
    size_t pos = 0;
    while (pos < body.size()) {
        size_t next = body.find(" + ", pos);
        std::string term =
            (next == std::string::npos) ? body.substr(pos) : body.substr(pos, next - pos);
        size_t mid = term.find("·");
        long digit = std::stol(mid == std::string::npos ? term : term.substr(0, mid));
        long expo = 0;
        if (mid != std::string::npos) {
            size_t q = mid + std::strlen("·");
            size_t after_p = q;
            while (after_p < term.size() && std::isdigit(static_cast<unsigned char>(term[after_p])))
                ++after_p;
            if (after_p == term.size()) {
                expo = 1;
            } else {
                size_t sp = after_p;
                expo = parse_superscript(term, sp);
            }
        }
        if (expo != count) throw bad_argument_error("parse_digits: non-consecutive exponents");
        unit += ZZ(digit) * ctx.pk(expo);
        ++count;
        if (next == std::string::npos) break;
        pos = next + 3;
    }
    PadicScalar base = PadicScalar::from_rational(QQ(unit), ctx);
    PadicScalar pv = PadicScalar::from_rational(
        v >= 0 ? QQ(ctx.pk(v)) : QQ(ZZ(1), ctx.pk(-v)), ctx);
    return base.mul(pv).truncate_abs(v + count);
}

} // namespace qfrob
