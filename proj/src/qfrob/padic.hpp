#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "qfrob/errors.hpp"

namespace qfrob {

using ZZ = mpz_class;
using QQ = mpq_class;

// v_p of an integer; n must be nonzero.
long vp(const ZZ& n, long p);
// v_p of a rational (num valuation minus den valuation); q must be nonzero.
long vp(const QQ& q, long p);

// Sentinel valuation for exact zero ("+infinity").
inline constexpr long kValInf = std::numeric_limits<long>::max() / 4;

// Prime + precision bundle. All p-adic values reference the Context they were
// created with; the Context must outlive them.
//
// `digits` is the reported precision N, `margin` the guard digits; N + margin
// base-p digits are carried internally.
class Context {
  public:
    Context(long p, int digits, int margin);

    long p() const { return p_; }
    int digits() const { return digits_; }
    int margin() const { return margin_; }
    int working() const { return digits_ + margin_; }

    // p^k, k >= 0. Cached well beyond working precision.
    const ZZ& pk(long k) const;

  private:
    long p_;
    int digits_;
    int margin_;
    std::vector<ZZ> powers_;
};

// Stopping policy for p-adic series. target_valuation is the absolute
// valuation the neglected tail must certifiably exceed.
struct TruncationPolicy {
    long target_valuation;
    int stability_window = 10;
    long hard_cap = 5000;
};

// A p-adic number in capped-relative representation: p^v * u with u a unit
// known modulo p^r (r <= N + margin). Two zero flavours are kept apart:
//   - exact zero (infinite valuation, an algebraic identity), and
//   - inexact zero: a value only known to be O(p^b) after cancellation.
class PadicScalar {
  public:
    enum class Kind : std::uint8_t { exact_zero, inexact_zero, value };

    static PadicScalar zero(const Context& ctx);
    static PadicScalar zero_mod(const Context& ctx, long abs_bound);
    static PadicScalar from_rational(const QQ& q, const Context& ctx);
    static PadicScalar from_long(long n, const Context& ctx);

    Kind kind() const { return kind_; }
    bool is_exact_zero() const { return kind_ == Kind::exact_zero; }
    bool is_zeroish() const { return kind_ != Kind::value; }

    // Valuation of a nonzero value; throws for either zero flavour.
    long valuation() const;
    // Certified lower bound on the valuation: v for values, the O(p^b) bound
    // for inexact zeros, kValInf for exact zero.
    long valuation_floor() const;
    // Known relative digits (r). kValInf for exact zero, 0 for inexact zero.
    long known_digits() const;
    // unit mod p^min(r, k)
    ZZ unit_mod(long k) const;
    const Context& context() const { return *ctx_; }

    PadicScalar add(const PadicScalar& y) const;
    PadicScalar sub(const PadicScalar& y) const;
    PadicScalar neg() const;
    PadicScalar mul(const PadicScalar& y) const;
    PadicScalar div(const PadicScalar& y) const;
    PadicScalar pow_ui(unsigned long e) const;

    // Drop knowledge below absolute precision `abs`: the result is the same
    // number known only modulo p^abs. Used when a series tail is certified
    // only above p^abs.
    PadicScalar truncate_abs(long abs) const;

    // First k base-p digits of the unit. Requires k known digits.
    std::vector<int> digits(int k) const;

    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) { return a.add(b); }
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a.sub(b); }
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) { return a.mul(b); }
    friend PadicScalar operator/(const PadicScalar& a, const PadicScalar& b) { return a.div(b); }
    friend PadicScalar operator-(const PadicScalar& a) { return a.neg(); }

  private:
    PadicScalar(const Context& ctx, Kind kind, long v, ZZ unit, long r)
        : ctx_(&ctx), kind_(kind), v_(v), r_(r), unit_(std::move(unit)) {}

    static PadicScalar make_value(const Context& ctx, long v, ZZ unit, long r);

    const Context* ctx_;
    Kind kind_;
    long v_; // valuation (value) or absolute bound (inexact zero); unused for exact zero
    long r_; // known relative digits
    ZZ unit_;
};

// True iff v_p(x - y) >= min(v(x), v(y)) + k. Both operands must carry at
// least k known digits (exact zeros count as fully known); comparing an
// inexact zero this way raises precision_exhausted_error — use is_zero_to.
bool agree_to(const PadicScalar& x, const PadicScalar& y, long k);

// Largest k in [0, cap] with agree_to(x, y, k), where cap is the smaller
// known-digit count. Returns cap when the difference vanishes to precision.
long agree_digits(const PadicScalar& x, const PadicScalar& y);

// "x = 0 to k digits" in the absolute sense: every certified digit of x at
// positions p^0 .. p^(k-1) vanishes, i.e. valuation_floor(x) >= k.
bool is_zero_to(const PadicScalar& x, long k);

// Teichmueller lift: the unique (p-1)-st root of unity congruent to a mod p.
PadicScalar teichmuller(long a, const Context& ctx);

// "d0 + d1·p + d2·p²" rendering, "p^v · " prefixed when v != 0.
// Exact zero renders as "0", an inexact zero as "O(p^b)".
std::string render_digits(const PadicScalar& x, int k);

// Parse the exact output format of render_digits back into a scalar
// (round-trip helper; accepts only that format).
PadicScalar parse_digits(const std::string& s, const Context& ctx);

} // namespace qfrob
