#include "qfrob/dwork.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace qfrob {

namespace {
const QQ kInfFloor(kValInf);

std::optional<std::string> resolve_cache_dir(const std::optional<std::string>& explicit_dir) {
    if (explicit_dir && !explicit_dir->empty()) return explicit_dir;
    if (const char* env = std::getenv("QFROB_CACHE_DIR"); env && *env) return std::string(env);
    return std::nullopt;
}
} // namespace

DworkCoefficients::DworkCoefficients(long p, std::optional<std::string> cache_dir) : p_(p) {
    if (auto dir = resolve_cache_dir(cache_dir))
        cache_path_ = *dir + "/dwork_B_" + std::to_string(p_) + ".txt";
    if (cache_path_) load_cache();
    if (coeffs_.empty()) {
        coeffs_.emplace_back(1);
        valuations_.push_back(0);
    }
}

DworkCoefficients::~DworkCoefficients() {
    if (cache_path_ && size() > loaded_size_) save_cache();
}

void DworkCoefficients::ensure(long n_max) {
    for (long n = size(); n <= n_max; ++n) {
        QQ b = coeffs_[static_cast<size_t>(n - 1)];
        if (n >= p_) b += coeffs_[static_cast<size_t>(n - p_)];
        b /= n;
        coeffs_.push_back(std::move(b));
        valuations_.push_back(vp(coeffs_.back(), p_));
        check_floor(n);
    }
}

const QQ& DworkCoefficients::at(long n) {
    if (n < 0) throw bad_argument_error("DworkCoefficients::at: negative index");
    ensure(n);
    return coeffs_[static_cast<size_t>(n)];
}

long DworkCoefficients::valuation(long n) {
    at(n);
    return valuations_[static_cast<size_t>(n)];
}

void DworkCoefficients::check_floor(long n) const {
    // v_p(B_n) >= n(p-1)/p^2 - n/(p-1), cleared of denominators.
    const long v = valuations_[static_cast<size_t>(n)];
    const long lhs = v * p_ * p_ * (p_ - 1);
    const long rhs = n * (p_ - 1) * (p_ - 1) - n * p_ * p_;
    if (lhs < rhs)
        throw identity_violated_error("Dwork coefficient valuation bound violated at n=" +
                                      std::to_string(n) + ": v=" + std::to_string(v));
}

void DworkCoefficients::load_cache() {
    std::ifstream in(*cache_path_);
    if (!in) return;
    std::vector<QQ> loaded;
    std::vector<long> vals;
    try {
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            long n;
            std::string frac;
            if (!(ls >> n >> frac) || n != static_cast<long>(loaded.size()))
                throw io_error("cache format");
            QQ q;
            if (mpq_set_str(q.get_mpq_t(), frac.c_str(), 10) != 0) throw io_error("cache number");
            q.canonicalize();
            loaded.push_back(std::move(q));
        }
        if (loaded.empty()) return;
        // Revalidate: the cache is untrusted input.
        if (loaded[0] != 1) throw io_error("cache B_0");
        for (long n = 1; n < static_cast<long>(loaded.size()); ++n) {
            QQ rhs = loaded[static_cast<size_t>(n - 1)];
            if (n >= p_) rhs += loaded[static_cast<size_t>(n - p_)];
            if (QQ(n) * loaded[static_cast<size_t>(n)] != rhs) throw io_error("cache recurrence");
        }
        vals.reserve(loaded.size());
        for (const QQ& q : loaded) vals.push_back(vp(q, p_));
    } catch (const error&) {
        return; // malformed cache: ignore, regenerate
    }
    coeffs_ = std::move(loaded);
    valuations_ = std::move(vals);
    loaded_size_ = size();
    for (long n = 0; n < size(); ++n) check_floor(n);
}

void DworkCoefficients::save_cache() const {
    const std::string tmp = *cache_path_ + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out) return;
        for (long n = 0; n < size(); ++n) {
            const QQ& q = coeffs_[static_cast<size_t>(n)];
            out << n << " " << q.get_num().get_str() << "/" << q.get_den().get_str() << "\n";
        }
        if (!out) {
            std::remove(tmp.c_str());
            return;
        }
    }
    if (std::rename(tmp.c_str(), cache_path_->c_str()) != 0) std::remove(tmp.c_str());
}

QQ valuation_floor(long n, long p) { return QQ(n * (p - 1), p * p); }

QQ dwork_coefficient_floor(long n, long p) {
    return QQ(n * (p - 1), p * p) - QQ(n, p - 1);
}

long digit_sum(long m, long p) {
    long s = 0;
    while (m > 0) {
        s += m % p;
        m /= p;
    }
    return s;
}

long factorial_valuation(long m, long p) { return (m - digit_sum(m, p)) / (p - 1); }

namespace {

long floor_log(long m, long p) {
    long l = 0;
    while (m >= p) {
        m /= p;
        ++l;
    }
    return l;
}

// pointwise certified floor for v_p(B_m · D[gamma, m-1+shift])
QQ pointwise_bracket_floor(long m, long p, int gamma, long shift) {
    const long beta = m - 1 + shift;
    if (beta < 0) return kInfFloor;
    if (beta == 0) return gamma == 0 ? dwork_coefficient_floor(m, p) : kInfFloor;
    const QQ dpart(factorial_valuation(beta, p) - gamma * floor_log(beta, p));
    return dwork_coefficient_floor(m, p) + dpart;
}

} // namespace

QQ bracket_tail_floor(long n, long p, int gamma, long shift) {
    const long m0 = std::max(n, 1L);
    // blocks indexed by l = floor(log_p beta); left-edge envelope
    //   h(l) = (p^l + 1 - shift)(p-1)/p^2 + (shift-1)/(p-1) - (gamma+1)l - 1
    // is nondecreasing once p^l (p-1)^2 >= (gamma+1) p^2.
    long l_mono = 0, pl = 1;
    while (pl * (p - 1) * (p - 1) < (gamma + 1) * p * p) {
        pl *= p;
        ++l_mono;
    }
    const long beta0 = std::max(m0 - 1 + shift, 1L);
    const long l_scan = std::max(floor_log(beta0, p), l_mono) + 1;
    long p_scan_end = 1; // p^(l_scan+1)
    for (long i = 0; i <= l_scan; ++i) p_scan_end *= p;
    const long m_end = (p_scan_end - 1) - shift + 1; // last m in block l_scan
    QQ best = kInfFloor;
    for (long m = m0; m <= m_end; ++m) {
        QQ f = pointwise_bracket_floor(m, p, gamma, shift);
        if (f < best) best = f;
    }
    // all blocks beyond l_scan: bounded below by the edge value at l_scan+1
    const long l_next = l_scan + 1;
    QQ edge = QQ((p_scan_end + 1 - shift) * (p - 1), p * p) + QQ(shift - 1, p - 1) -
              QQ((gamma + 1) * l_next + 1);
    if (edge < best) best = edge;
    return best;
}

SeriesResult series_sum(const std::function<QQ(long)>& term,
                        const std::function<QQ(long)>& tail_floor, const Context& ctx,
                        const TruncationPolicy& policy, long n_start) {
    const QQ target(policy.target_valuation);
    PadicScalar acc = PadicScalar::zero(ctx);
    int window = 0;
    bool tail_infinite = false;
    long n = n_start;
    for (;; ++n) {
        if (n - n_start >= policy.hard_cap)
            throw truncation_cap_error("series_sum: no convergence within " +
                                       std::to_string(policy.hard_cap) + " terms");
        PadicScalar t = PadicScalar::from_rational(term(n), ctx);
        acc = acc.add(t);
        if (t.valuation_floor() >= policy.target_valuation)
            ++window;
        else
            window = 0;
        if (window >= policy.stability_window) {
            QQ tf = tail_floor(n + 1);
            if (tf >= target) {
                tail_infinite = tf >= kInfFloor;
                break;
            }
        }
    }
    PadicScalar value = (acc.is_exact_zero() && tail_infinite)
                            ? acc
                            : acc.truncate_abs(policy.target_valuation);
    return {value, n};
}

SeriesResult minus_one_identity(DworkCoefficients& dwork, const Context& ctx,
                                const TruncationPolicy& policy) {
    const long p = ctx.p();
    ZZ fact0;
    mpz_fac_ui(fact0.get_mpz_t(), static_cast<unsigned long>(p - 1));
    // running factorial (s + p - 1)!; series_sum calls terms sequentially
    auto term = [&dwork, p, fact = std::move(fact0), last = -1L](long s) mutable -> QQ {
        if (s != last + 1) throw bad_argument_error("minus_one_identity: non-sequential term");
        if (s > 0) fact *= (s + p - 1);
        last = s;
        return dwork.at(s) * QQ(fact);
    };
    auto tail = [p](long s) { return bracket_tail_floor(s, p, 0, p); };
    return series_sum(term, tail, ctx, policy);
}

} // namespace qfrob
