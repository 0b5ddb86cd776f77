#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qfrob/padic.hpp"

namespace qfrob {

// Coefficients B_n of the Dwork exponential f(x) = exp(x^p/p + x), generated
// exactly by the recurrence n·B_n = B_{n-1} + B_{n-p} (B_{n-p} := 0 for n < p).
//
// Every extension re-checks the certified coefficient bound
//     v_p(B_n) >= n(p-1)/p^2 - n/(p-1),
// which is the theta-function bound v_p(coeff_n of exp(pi x)) >= n(p-1)/p^2
// carried back through the scaling x -> x/pi, v_p(pi) = 1/(p-1). The bound is
// sharp infinitely often, so it is enforced with no slack; a violation means a
// generation bug and aborts.
//
// When a cache directory is configured (explicitly or via QFROB_CACHE_DIR),
// coefficients are loaded from / persisted to "dwork_B_<p>.txt" in the format
// "n numerator/denominator", one line per coefficient. The cache is purely an
// optimization: loaded prefixes are revalidated against the recurrence, and a
// malformed file is ignored and regenerated.
class DworkCoefficients {
  public:
    explicit DworkCoefficients(long p, std::optional<std::string> cache_dir = std::nullopt);
    ~DworkCoefficients();

    DworkCoefficients(const DworkCoefficients&) = delete;
    DworkCoefficients& operator=(const DworkCoefficients&) = delete;

    long p() const { return p_; }
    long size() const { return static_cast<long>(coeffs_.size()); }
    void ensure(long n_max);
    const QQ& at(long n);
    // exact v_p(B_n) (B_n != 0 for all n), memoized
    long valuation(long n);

  private:
    void check_floor(long n) const;
    void load_cache();
    void save_cache() const;

    long p_;
    std::optional<std::string> cache_path_;
    std::vector<QQ> coeffs_;
    std::vector<long> valuations_; // grows lazily with valuation()
    long loaded_size_ = 0;         // high-water mark already persisted
};

// n(p-1)/p^2: valuation floor for the coefficients of exp(pi x) and exp(-pi z),
// the form in which B_n enters every tail estimate (B_n is always paired with
// a factorial-sized weight that restores the pi^n scaling).
QQ valuation_floor(long n, long p);

// Certified lower bound for v_p(B_n) itself: n(p-1)/p^2 - n/(p-1).
QQ dwork_coefficient_floor(long n, long p);

// v_p(m!) = (m - digitsum_p(m)) / (p-1), exact (Legendre).
long factorial_valuation(long m, long p);

// digit sum of m in base p
long digit_sum(long m, long p);

// Certified lower bound for inf_{m >= n} v_p(B_m · D[gamma, m-1+shift]), the
// generic bracket-series tail. Uses v_p(D[gamma, beta]) >= v_p(beta!) -
// gamma·floor(log_p beta) and the exact Legendre valuation, scanning the
// current base-p block exactly and bounding later blocks by their left-edge
// envelope (which is eventually increasing in the block index).
QQ bracket_tail_floor(long n, long p, int gamma, long shift);

struct SeriesResult {
    PadicScalar value;
    long n_max_used;
};

// Sum term(n) for n >= n_start p-adically. Stops at n once
//   (a) tail_floor(n+1) >= policy.target_valuation, where tail_floor(m) must
//       lower-bound the valuation of EVERY term with index >= m, and
//   (b) the last policy.stability_window computed terms all had valuation
//       >= policy.target_valuation.
// The returned value is truncated to absolute precision target_valuation,
// since that is all the tail certificate guarantees.
SeriesResult series_sum(const std::function<QQ(long)>& term,
                        const std::function<QQ(long)>& tail_floor, const Context& ctx,
                        const TruncationPolicy& policy, long n_start = 0);

// Sum_{s>=0} B_s·(s+p-1)!  — must equal -1: the degree-zero coefficient of
// the reduction  D x^{p-1} f(x) = -f(x)  with D = sum of all partial slots.
SeriesResult minus_one_identity(DworkCoefficients& dwork, const Context& ctx,
                                const TruncationPolicy& policy);

} // namespace qfrob
