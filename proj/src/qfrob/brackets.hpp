#pragma once

#include <vector>

#include "qfrob/dwork.hpp"
#include "qfrob/padic.hpp"

namespace qfrob {

// The integers D[alpha, beta]: weighted word combinatorics of the operators
// "d/dx" and "multiply by 1/x" — D[alpha, beta] sums, over all words of
// length beta containing alpha occurrences of 1/x, the degree-zero
// coefficient of the word applied to x^beta. They satisfy
//     D[alpha, beta] = beta·D[alpha, beta-1] + D[alpha-1, beta-1],
// with D[0, beta] = beta!, D[alpha, alpha] = 1, and D[alpha, beta] = 0 for
// alpha < 0 or alpha > beta.
class DTable {
  public:
    const ZZ& d_value(int alpha, long beta);
    void ensure(int alpha_max, long beta_max);

  private:
    std::vector<std::vector<ZZ>> rows_; // rows_[alpha][beta]
};

// The iterated harmonic sums S^alpha(beta):
//     S^0(beta) = 1 (beta >= 1),  S^alpha(beta) = sum_{i=1}^{beta-1} S^{alpha-1}(i)/i,
//     S^alpha(beta) = 0 for beta <= alpha,
// with the factorial bridge D[alpha, beta-1] = (beta-1)!·S^alpha(beta).
class HarmonicTable {
  public:
    const QQ& s_value(int alpha, long beta);
    void ensure(int alpha_max, long beta_max);

  private:
    std::vector<std::vector<QQ>> rows_;
};

struct BracketValue {
    int gamma;
    PadicScalar value;
    long n_max_used;
};

// L_gamma = sum_{i>=1} B_i · D[gamma, i-1]  (the degree-zero bracket of
// D^gamma_x (1/x) f(x)).
BracketValue bracket_L(int gamma, DworkCoefficients& dwork, DTable& dtab, const Context& ctx,
                       const TruncationPolicy& policy);

// F(gamma) = (-1)^gamma · sum_{s>=0} B_s · D[gamma, s+p-1]  (the degree-zero
// bracket of D^gamma_x x^{p-1} f(x), sign included).
//
// The reduction D^s_x x^{p-1} f = -D^{s-1}_x (1/x) f forces F(0) = -1 and
// F(gamma) = (-1)^{gamma+1} L_{gamma-1}; both sides are computed and must
// agree to the reported precision (reduction_identity_error otherwise).
// When agreement_digits is non-null it receives the measured agreement.
BracketValue bracket_F(int gamma, DworkCoefficients& dwork, DTable& dtab, const Context& ctx,
                       const TruncationPolicy& policy, long* agreement_digits = nullptr);

// Delta_s = L_{s-1} - L_0^s / s!   (s >= 1)
PadicScalar delta_s(int s, DworkCoefficients& dwork, DTable& dtab, const Context& ctx,
                    const TruncationPolicy& policy);

} // namespace qfrob
