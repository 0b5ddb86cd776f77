// Acceptance gate: eleven end-to-end criteria, one PASS/FAIL line each, with
// the tolerances and wall-time budgets pinned below. Exit code 0 iff every
// criterion passes. Each criterion is independently timed and exceptions are
// folded into its line instead of aborting the run.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <exception>
#include <sstream>
#include <string>

#include "qfrob/cohomology.hpp"
#include "qfrob/lfunction.hpp"
#include "qfrob/report.hpp"

using namespace qfrob;

namespace {

// pinned tolerances
constexpr long kFullDigits = 15; // identities proved by the series layer
constexpr long kLpDigits = 10;   // the bracket / L-value comparison
constexpr long kBruteDigits = 5; // certified brute-force crosscheck target

// pinned wall-time budgets (seconds)
constexpr double kBudgetPicardFuchs = 1.0;
constexpr double kBudgetMinusOnePerPrime = 5.0;
constexpr double kBudgetReduction = 10.0;
constexpr double kBudgetDelta2 = 30.0;
constexpr double kBudgetDelta3 = 60.0;
constexpr double kBudgetCGrid = 30.0;
constexpr double kBudgetFirstRowPerPrime = 30.0;
constexpr double kBudgetBruteForce = 300.0;
constexpr double kBudgetMatrixPerPrime = 60.0;
constexpr double kBudgetLp = 120.0;

constexpr std::array<long, 5> kAllPrimes{3, 5, 7, 11, 13};
constexpr std::array<long, 4> kQuinticPrimes{3, 7, 11, 13}; // construction needs p != 5

using Clock = std::chrono::steady_clock;

struct Timer {
    Clock::time_point t0 = Clock::now();
    double seconds() const { return std::chrono::duration<double>(Clock::now() - t0).count(); }
};

bool g_all_ok = true;

void emit(int n, bool ok, const std::string& what) {
    std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, what.c_str());
    std::fflush(stdout);
    g_all_ok = g_all_ok && ok;
}

// Runs body(oss) -> math_ok, folds exceptions into the line, enforces budget.
template <typename Body>
void criterion(int n, const std::string& label, double budget, Body&& body) {
    std::ostringstream oss;
    bool math_ok = false;
    Timer t;
    try {
        math_ok = body(oss);
    } catch (const std::exception& e) {
        oss << " error: " << e.what();
    }
    const double secs = t.seconds();
    const bool time_ok = secs <= budget;
    std::ostringstream line;
    line << label << " [" << oss.str() << (oss.str().empty() ? "" : "; ");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f s, budget %.0f s]", secs, budget);
    line << buf;
    if (!time_ok) line << " (over budget)";
    emit(n, math_ok && time_ok, line.str());
}

std::string digit_note(long d) {
    return d >= kValInf / 2 ? std::string("exact") : std::to_string(d);
}

} // namespace

int main() {
    criterion(1, "rank-four equation coefficients are exactly (-10, -35, -50, -24)",
              kBudgetPicardFuchs, [](std::ostringstream&) {
                  const auto pf = picard_fuchs_solve();
                  return pf[0] == -10 && pf[1] == -35 && pf[2] == -50 && pf[3] == -24;
              });

    criterion(2,
              "sum_s B_s (s+p-1)! = -1 to >= 15 digits for p in {3, 7, 13}, under 5 s per prime",
              kBudgetMinusOnePerPrime, [](std::ostringstream& oss) {
                  bool ok = true;
                  double worst = 0.0;
                  long min_digits = kValInf;
                  for (long p : {3L, 7L, 13L}) {
                      Timer t;
                      Engine eng(p, 15, 10);
                      SeriesResult res = minus_one_identity(eng.dwork(), eng.ctx(), eng.policy());
                      const long d =
                          agree_digits(res.value, PadicScalar::from_long(-1, eng.ctx()));
                      min_digits = std::min(min_digits, d);
                      worst = std::max(worst, t.seconds());
                      ok = ok && d >= kFullDigits && t.seconds() <= kBudgetMinusOnePerPrime;
                  }
                  oss << "min agreement " << digit_note(min_digits) << " digits, slowest prime "
                      << worst << " s";
                  return ok;
              });

    criterion(3, "F(g) = (-1)^(g+1) L_(g-1) to >= 15 digits for g = 1, 2, 3 at p in {3, 7}",
              kBudgetReduction, [](std::ostringstream& oss) {
                  bool ok = true;
                  long min_digits = kValInf;
                  for (long p : {3L, 7L}) {
                      Engine eng(p, 15, 10);
                      for (int gamma = 1; gamma <= 3; ++gamma) {
                          const long d = eng.f_agreement(gamma);
                          min_digits = std::min(min_digits, d);
                          ok = ok && d >= kFullDigits;
                      }
                  }
                  oss << "min agreement " << digit_note(min_digits) << " digits";
                  return ok;
              });

    criterion(4, "Delta_2 = 0 to >= 15 digits for every p in {3, 5, 7, 11, 13}", kBudgetDelta2,
              [](std::ostringstream& oss) {
                  bool ok = true;
                  long min_bound = kValInf;
                  for (long p : kAllPrimes) {
                      Engine eng(p, 15, 10);
                      PadicScalar d2 = eng.delta(2);
                      min_bound = std::min(min_bound, d2.valuation_floor());
                      ok = ok && is_zero_to(d2, kFullDigits);
                  }
                  oss << "min certified zero bound " << digit_note(min_bound);
                  return ok;
              });

    criterion(5, "Delta_3 is a nonzero value of valuation < 15 for every p in {3, 5, 7, 11, 13}",
              kBudgetDelta3, [](std::ostringstream& oss) {
                  bool ok = true;
                  std::string vals;
                  for (long p : kAllPrimes) {
                      Engine eng(p, 15, 10);
                      PadicScalar d3 = eng.delta(3);
                      const bool nz = !d3.is_zeroish() && d3.valuation() < kFullDigits;
                      ok = ok && nz;
                      vals += (vals.empty() ? "" : " ") + std::to_string(p) + ":" +
                              (nz ? "v=" + std::to_string(d3.valuation()) : "zeroish");
                  }
                  oss << vals;
                  return ok;
              });

    criterion(6,
              "pairing-coefficient recursion equals the closed form exactly on the full grid "
              "(indices <= 6, s <= 10, alpha <= 3)",
              kBudgetCGrid, [](std::ostringstream& oss) {
                  bool ok = true;
                  long cases = 0;
                  for (long i0 = 0; i0 <= 6 && ok; ++i0)
                      for (long i1 = 0; i1 <= i0 && ok; ++i1)
                          for (long i2 = 0; i2 <= i1 && ok; ++i2)
                              for (long i3 = 0; i3 <= i2 && ok; ++i3)
                                  for (long i4 = 0; i4 <= i3 && ok; ++i4)
                                      for (long s = 0; s <= 10 && ok; ++s) {
                                          MultiIndex I({i0, i1, i2, i3, i4}, s);
                                          for (int a = 0; a <= 3 && ok; ++a) {
                                              const QQ rec = c_recursive(a, I);
                                              ok = rec == c_closed(a, I);
                                              if (ok && a + I.sharp() > 3) ok = rec == 0;
                                              ++cases;
                                          }
                                      }
                  oss << cases << " cases, all exact";
                  return ok;
              });

    criterion(7,
              "first row: R_3 = -1, R_2 = 0, R_1 = 0 and R_0 = (24/25) Delta_3, all to >= 15 "
              "digits, for p in {3, 7, 11, 13}, under 30 s per prime",
              kBudgetFirstRowPerPrime, [](std::ostringstream& oss) {
                  bool ok = true;
                  double worst = 0.0;
                  long min_digits = kValInf;
                  for (long p : kQuinticPrimes) {
                      Timer t;
                      Engine eng(p, 15, 10);
                      FirstRow fr = first_row(eng);
                      PadicScalar expected = PadicScalar::from_rational(QQ(24, 25), eng.ctx())
                                                 .mul(eng.delta(3));
                      const long r0_digits = agree_digits(fr.r[0], expected);
                      min_digits = std::min({min_digits, fr.r3_agreement, fr.r2_zero_bound,
                                             fr.r1_zero_bound, r0_digits});
                      ok = ok && fr.r3_agreement >= kFullDigits &&
                           fr.r2_zero_bound >= kFullDigits && fr.r1_zero_bound >= kFullDigits &&
                           r0_digits >= kFullDigits && t.seconds() <= kBudgetFirstRowPerPrime;
                      worst = std::max(worst, t.seconds());
                  }
                  oss << "min bound " << digit_note(min_digits) << " digits, slowest prime "
                      << worst << " s";
                  return ok;
              });

    criterion(8,
              "literal six-fold sum at p = 3 matches the factorized first row to its certified "
              "target (certificate >= 5 digits) for all four rows",
              kBudgetBruteForce, [](std::ostringstream& oss) {
                  Engine eng(3, 15, 10);
                  const long cutoff = bruteforce_cutoff_for(eng, kBruteDigits);
                  BruteForceRow bf = first_row_bruteforce(eng, cutoff);
                  FirstRow fr = first_row(eng);
                  long min_bound = kValInf;
                  for (int a = 0; a < 4; ++a)
                      min_bound =
                          std::min(min_bound, fr.r[a].sub(bf.r[a]).valuation_floor());
                  oss << "cutoff " << cutoff << ", certificate " << bf.certified_digits
                      << " digits, observed agreement bound " << digit_note(min_bound);
                  return bf.certified_digits >= kBruteDigits && min_bound >= bf.certified_digits;
              });

    criterion(9,
              "frobenius matrix: diagonal (p^3, p^2, p, 1), single off-diagonal entry "
              "p^3 (24/25) Delta_3, M^T G M = p^3 G and M D = p D M to >= 15 digits, for "
              "p in {3, 7, 11, 13}, under 60 s per prime",
              kBudgetMatrixPerPrime, [](std::ostringstream& oss) {
                  bool ok = true;
                  double worst = 0.0;
                  long min_digits = kValInf;
                  for (long p : kQuinticPrimes) {
                      Timer t;
                      Engine eng(p, 15, 10);
                      const Context& ctx = eng.ctx();
                      FrobeniusMatrix m = frobenius_matrix(eng, Convention::standard);
                      bool shape = true;
                      for (int i = 0; i < 4; ++i)
                          for (int j = 0; j < 4; ++j) {
                              const PadicScalar& e = m.entries[i][j];
                              if (i == j)
                                  shape = shape && !e.is_zeroish() && e.valuation() == 3 - i &&
                                          e.unit_mod(1) == 1;
                              else if (i == 0 && j == 3)
                                  shape = shape && !e.is_zeroish();
                              else
                                  shape = shape && e.is_exact_zero();
                          }
                      PadicScalar corner_expected =
                          m.delta3.mul(PadicScalar::from_rational(QQ(24, 25) * QQ(ctx.pk(3)), ctx));
                      const long corner = agree_digits(m.entries[0][3], corner_expected);
                      const long sympl = symplectic_zero_bound(m);
                      const long comm = delta_commutation_zero_bound(m);
                      min_digits = std::min({min_digits, corner, sympl, comm});
                      ok = ok && shape && corner >= kFullDigits && sympl >= kFullDigits &&
                           comm >= kFullDigits && t.seconds() <= kBudgetMatrixPerPrime;
                      worst = std::max(worst, t.seconds());
                  }
                  oss << "min bound " << digit_note(min_digits) << " digits, slowest prime "
                      << worst << " s";
                  return ok;
              });

    criterion(10,
              "Delta_3 = L_p(3, omega^-2)/3 to >= 10 digits for p in {5, 7, 11, 13}; the p = 3 "
              "value is compared under its normalization caveat without gating",
              kBudgetLp, [](std::ostringstream& oss) {
                  bool ok = true;
                  std::string per_prime;
                  for (long p : kAllPrimes) {
                      Engine eng(p, 15, 10);
                      Delta3Comparison cmp = compare_delta3(eng);
                      per_prime += (per_prime.empty() ? "" : " ") + std::to_string(p) + ":" +
                                   std::to_string(cmp.digits_agreed) +
                                   (cmp.caveat ? "(caveat)" : "");
                      if (p == 3) {
                          if (!cmp.pass) per_prime += "[disagrees under caveat]";
                      } else {
                          ok = ok && cmp.pass && cmp.digits_agreed >= kLpDigits;
                      }
                  }
                  oss << "agreement digits " << per_prime;
                  return ok;
              });

    criterion(11, "two full verify runs at p = 7 produce byte-identical JSON", kBudgetLp,
              [](std::ostringstream& oss) {
                  Engine a(7, 15, 10);
                  Engine b(7, 15, 10);
                  const std::string ja = run_verify(a, "all").to_json();
                  const std::string jb = run_verify(b, "all").to_json();
                  oss << ja.size() << " bytes each";
                  return !ja.empty() && ja == jb;
              });

    return g_all_ok ? 0 : 1;
}
