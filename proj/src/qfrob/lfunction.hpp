#pragma once

#include <vector>

#include "qfrob/engine.hpp"

namespace qfrob {

// Bern_0 .. Bern_n_max, exact classical Bernoulli numbers (Bern_1 = -1/2),
// by the defining convolution sum_{k<=m} C(m+1,k) Bern_k = 0. Named Bern to
// keep them apart from the Dwork coefficients B_n.
std::vector<QQ> bernoulli_numbers(int n_max);

struct LValue {
    long s = 0;
    long character_exponent = 0; // 1 - s reduced into [0, p-2]
    PadicScalar value;
    long terms_used = 0;      // inner j-sum truncation length
    long outer_valuation = 0; // v_p of the exact outer sum (kValInf if it vanished)
    bool caveat = false;      // p = 3: the measure bound fails, value may have v < 0
};

// Kubota-Leopoldt value L_p(s, omega^(1-s)) for odd integer s >= 3, evaluated
// through the regularized measure expansion with modulus F = p^modulus_power:
//
//   L_p(s, omega^(1-s)) = 1/(s-1) * 1/F * sum_{a=1..F, p∤a} a^(1-s) *
//                         sum_{j>=0} C(1-s, j) (F/a)^j Bern_j
//
// The inner j-series is truncated once j*modulus_power - 1 (a valuation floor
// from von Staudt-Clausen) clears the working precision; everything up to the
// final reduction is exact rational arithmetic, so the result is independent
// of summation order and, provably, of modulus_power.
//
// For p >= 5 the exact outer sum must have valuation >= 1
// (inner_sum_valuation_error otherwise); at p = 3 that bound genuinely fails
// (the value itself has negative valuation) and the returned LValue carries
// caveat = true instead.
//
// min_terms forces at least that many inner-sum terms beyond the automatic
// truncation point, so callers can confirm the reported digits are stable
// under a longer expansion.
LValue lp_value(const Context& ctx, long s, int modulus_power = 1, long min_terms = 0);

// zeta_p(s) = p^s / (p^s - 1) * L_p(s, omega^(1-s))
LValue zeta_p(const Context& ctx, long s);

// The headline comparison: Delta_3 (from the bracket route) against
// L_p(3, omega^-2)/3, with the number of agreeing relative digits.
struct Delta3Comparison {
    PadicScalar delta3;
    PadicScalar lp_over_3;
    long digits_agreed = 0;
    bool pass = false; // digits_agreed >= 10, the pinned tolerance
    bool caveat = false;
};
Delta3Comparison compare_delta3(Engine& eng);

} // namespace qfrob
