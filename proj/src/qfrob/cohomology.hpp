#pragma once

#include <array>
#include <map>

#include "qfrob/engine.hpp"

namespace qfrob {

// A cohomology class written in the graded basis {pi^s omega_s : s >= 0}:
// maps s to the exact rational coefficient of pi^s omega_s. pi is a pure
// grading marker (pi^(p-1) = -p is never evaluated); every identity used is
// pi-homogeneous per slot, so no ramified arithmetic is needed.
using OmegaSVector = std::map<long, QQ>;

// delta^i omega expanded over {pi^s omega_s}, built by iterating
//     delta(pi^s omega_s) = -(s+1) pi^s omega_s - pi^(s+1) omega_(s+1).
// delta_power_expansion(0) = {0: 1}; supported for any i >= 0.
OmegaSVector delta_power_expansion(int i);

// The unique exact solution (a3, a2, a1, a0) of
//     a3 delta^3 omega + a2 delta^2 omega + a1 delta omega + a0 omega
//       = delta^4 omega  (with its omega_4 component dropped),
// i.e. the coefficients of the rank-four differential equation satisfied by
// omega at the boundary. Returns (-10, -35, -50, -24).
// Throws singular_system_error if the system degenerates (cannot happen for
// a correct expansion table; the check guards the implementation).
std::array<QQ, 4> picard_fuchs_solve();

// The six-index label of a pairing coefficient c^alpha_I: five exchangeable
// indices (stored sorted descending) plus the distinguished index s.
struct MultiIndex {
    std::array<long, 5> idx{}; // sorted descending
    long s = 0;

    MultiIndex() = default;
    MultiIndex(std::array<long, 5> indices, long s_index);

    // Number of nonzero entries among the five exchangeable indices
    // (s is excluded).
    int sharp() const;
};

// c^alpha_I by descending the defining relations to the base index:
//   s-step:  c^a_{I,s} = s c^a_{I,s-1} - c^(a+1)_{I,s-1}          (s > 0)
//   i-step:  c^a_{(i+1),R,0} = i c^a_{(i),R,0} + (1/5) c^(a+1)_{(i),R,0}
// with c^a = 0 for a > 3, c^3 = 1 and c^(a<3) = 0 at the zero index.
// Memoized; exact rational output; thread-safe.
QQ c_recursive(int alpha, const MultiIndex& I);

// c^alpha_I by the closed composition formula: with chi = 3 - sharp(I) - alpha,
//   c^alpha_I = sum over gamma + b1 + ... + b5 = chi of
//               (-1)^gamma D[gamma, s] * prod_k Dhat^(b_k)(idx_k),
// where Dhat^b(i) = D[b, i-1] / 5^(b+1) for i > 0 and Dhat^b(0) = [b == 0].
// Zero whenever chi < 0. Must coincide with c_recursive everywhere.
QQ c_closed(int alpha, const MultiIndex& I);

// Per-slot factor of the factorized first-row sum:
// ghat(0) = 1, ghat(beta) = L_(beta-1) / 5^beta for beta >= 1.
PadicScalar ghat(Engine& eng, int beta);

// The four first-row sums R_alpha (alpha = 0..3),
//     R_alpha = sum_{gamma + b1 + ... + b5 = 3 - alpha} F(gamma) prod_k ghat(b_k),
// collapsed over the five exchangeable slots into partitions with placement
// multiplicities. The boundary identities are enforced here:
//   R_3 = -1 and R_2 = R_1 = 0, all to the reported precision
// (identity_violated_error otherwise); the measured bounds are recorded.
struct FirstRow {
    std::array<PadicScalar, 4> r;
    long r3_agreement = 0;   // digits of agreement of R_3 with -1
    long r2_zero_bound = 0;  // certified absolute zero bound of R_2
    long r1_zero_bound = 0;  // certified absolute zero bound of R_1
};
FirstRow first_row(Engine& eng);

// Truncation certificate for the literal six-fold sum at per-index cutoff
// `cutoff`: a lower bound T (in absolute base-p digits) such that every
// discarded term has valuation >= T. Derived from exact per-slot valuation
// minima inside the cutoff plus analytic floors beyond it.
long bruteforce_certified_digits(Engine& eng, long cutoff);

// Smallest cutoff (scanned in steps of 10 from 30) whose certificate reaches
// digit_target. Throws bad_argument_error if 400 does not suffice.
long bruteforce_cutoff_for(Engine& eng, long digit_target);

// The literal six-fold sum
//     sum_{i,j,k,n,m <= cutoff} sum_{s <= cutoff}
//         B_i B_j B_k B_n B_m B_s c^alpha_{ijknm(s+p-1)}
// evaluated through the defining c-relations (seeded by index-steps at s = 0,
// then evolved in s), organized over sorted index multisets with placement
// multiplicities. Independent slow route used to validate first_row;
// certified_digits is the truncation certificate at this cutoff.
struct BruteForceRow {
    std::array<PadicScalar, 4> r;
    long cutoff = 0;
    long certified_digits = 0;
};
BruteForceRow first_row_bruteforce(Engine& eng, long cutoff);

enum class Convention { standard, dwork };

// Frobenius action on the basis {omega, delta omega, delta^2 omega,
// delta^3 omega} at the boundary point, in row convention:
// entries[i][j] = coefficient of delta^j omega in Fr(delta^i omega).
//
// Standard convention:
//     Fr omega         = p^3 omega + p^3 (24/25) Delta_3 delta^3 omega
//     Fr delta^i omega = p^(3-i) delta^i omega   (i = 1, 2, 3)
// The dwork convention is p^2 times the standard matrix. delta3 records the
// independently computed Delta_3 = L_2 - L_0^3/6 against which the corner
// entry is cross-checked (identity_violated_error on disagreement).
struct FrobeniusMatrix {
    std::array<std::array<PadicScalar, 4>, 4> entries;
    Convention convention = Convention::standard;
    PadicScalar delta3;
    FirstRow row0; // the verified first-row data the matrix was built from
};
FrobeniusMatrix frobenius_matrix(Engine& eng, Convention convention);

// Certified zero bound (min over the 16 entries of valuation_floor) of
//     M^T G M - p^e G,   e = 3 (standard) or 7 (dwork),
// where G is the antidiagonal Gram matrix (1, -1, 1, -1) from the top-right.
// kValInf when the difference vanishes identically.
long symplectic_zero_bound(const FrobeniusMatrix& m);

// Certified zero bound of M D - p D M, where D is the nilpotent matrix of
// delta on the basis (delta^i omega -> delta^(i+1) omega, delta^3 omega -> 0).
long delta_commutation_zero_bound(const FrobeniusMatrix& m);

} // namespace qfrob
