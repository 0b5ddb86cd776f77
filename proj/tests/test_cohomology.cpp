#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qfrob/cohomology.hpp"

using namespace qfrob;

namespace {

QQ factorial_q(long n) {
    ZZ f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return QQ(f);
}

// Independent closed form for the coefficient of pi^j omega_j in delta^i omega:
//     (-1)^(i+j) sum_{a+b=j} (-1)^a (a+1)^i / (a! b!)
// (solve the two-term recurrence by expanding over the eigenbasis of the
// diagonal part; checked by hand for i <= 3).
QQ delta_coefficient_closed(int i, long j) {
    QQ total(0);
    for (long a = 0; a <= j; ++a) {
        ZZ pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(a + 1),
                      static_cast<unsigned long>(i));
        QQ term = QQ(pw) / (factorial_q(a) * factorial_q(j - a));
        if (a % 2 != 0) term = -term;
        total += term;
    }
    if ((i + j) % 2 != 0) total = -total;
    return total;
}

} // namespace

TEST_CASE("delta powers expand to the hand-checked tables") {
    auto d0 = delta_power_expansion(0);
    REQUIRE(d0.size() == 1);
    CHECK(d0.at(0) == 1);

    auto d1 = delta_power_expansion(1);
    REQUIRE(d1.size() == 2);
    CHECK(d1.at(0) == -1);
    CHECK(d1.at(1) == -1);

    auto d2 = delta_power_expansion(2);
    REQUIRE(d2.size() == 3);
    CHECK(d2.at(0) == 1);
    CHECK(d2.at(1) == 3);
    CHECK(d2.at(2) == 1);

    auto d3 = delta_power_expansion(3);
    REQUIRE(d3.size() == 4);
    CHECK(d3.at(0) == -1);
    CHECK(d3.at(1) == -7);
    CHECK(d3.at(2) == -6);
    CHECK(d3.at(3) == -1);

    CHECK_THROWS_AS(delta_power_expansion(-1), bad_argument_error);
}

TEST_CASE("delta powers match the closed-form coefficients") {
    for (int i = 0; i <= 6; ++i) {
        auto exp = delta_power_expansion(i);
        REQUIRE(exp.size() == static_cast<std::size_t>(i) + 1);
        for (long j = 0; j <= i; ++j) {
            CAPTURE(i);
            CAPTURE(j);
            CHECK(exp.at(j) == delta_coefficient_closed(i, j));
        }
    }
}

TEST_CASE("the rank-four equation has the expected exact coefficients") {
    auto pf = picard_fuchs_solve();
    CHECK(pf[0] == -10);
    CHECK(pf[1] == -35);
    CHECK(pf[2] == -50);
    CHECK(pf[3] == -24);
}

TEST_CASE("multi-index labels canonicalize and validate") {
    MultiIndex I({0, 3, 1, 0, 2}, 5);
    CHECK(I.idx == std::array<long, 5>{3, 2, 1, 0, 0});
    CHECK(I.s == 5);
    CHECK(I.sharp() == 3);

    CHECK(MultiIndex().sharp() == 0);
    CHECK_THROWS_AS(MultiIndex({-1, 0, 0, 0, 0}, 0), bad_argument_error);
    CHECK_THROWS_AS(MultiIndex({0, 0, 0, 0, 0}, -2), bad_argument_error);
    CHECK_THROWS_AS(c_recursive(4, MultiIndex()), bad_argument_error);
    CHECK_THROWS_AS(c_closed(-1, MultiIndex()), bad_argument_error);
}

TEST_CASE("pairing coefficients at hand-checked labels") {
    // base label
    CHECK(c_recursive(3, MultiIndex()) == 1);
    CHECK(c_recursive(2, MultiIndex()) == 0);
    CHECK(c_recursive(0, MultiIndex()) == 0);
    // pure s-evolution: c^3 at s = 3 is D[0,3] = 3! = 6
    CHECK(c_recursive(3, MultiIndex({0, 0, 0, 0, 0}, 3)) == 6);
    // one index step
    CHECK(c_recursive(2, MultiIndex({1, 0, 0, 0, 0}, 0)) == QQ(1, 5));
    CHECK(c_recursive(3, MultiIndex({1, 0, 0, 0, 0}, 0)) == 0);
    // three index steps
    CHECK(c_recursive(0, MultiIndex({1, 1, 1, 0, 0}, 0)) == QQ(1) / QQ(125));
    // overloaded labels vanish
    CHECK(c_recursive(1, MultiIndex({1, 1, 1, 0, 0}, 0)) == 0);
    CHECK(c_recursive(0, MultiIndex({2, 1, 1, 1, 0}, 0)) == 0);
    CHECK(c_recursive(0, MultiIndex({1, 1, 1, 1, 1}, 4)) == 0);
}

TEST_CASE("recursive and closed pairing coefficients coincide on a sample") {
    for (int alpha = 0; alpha <= 3; ++alpha)
        for (long i1 = 0; i1 <= 3; ++i1)
            for (long i2 = 0; i2 <= i1; ++i2)
                for (long i3 = 0; i3 <= i2; ++i3)
                    for (long s = 0; s <= 5; ++s) {
                        MultiIndex I({i1, i2, i3, 0, 0}, s);
                        CAPTURE(alpha);
                        CAPTURE(i1);
                        CAPTURE(i2);
                        CAPTURE(i3);
                        CAPTURE(s);
                        QQ rec = c_recursive(alpha, I);
                        CHECK(rec == c_closed(alpha, I));
                        if (alpha + I.sharp() > 3) CHECK(rec == 0);
                    }
}

TEST_CASE("per-slot factors of the factorized first-row sum") {
    Engine eng(7, 15, 10);
    PadicScalar g0 = ghat(eng, 0);
    CHECK(g0.valuation() == 0);
    CHECK(g0.unit_mod(16) == 1);

    PadicScalar expected = eng.L(1).value.mul(PadicScalar::from_rational(QQ(1, 25), eng.ctx()));
    CHECK(agree_digits(ghat(eng, 2), expected) >= 15);
    CHECK_THROWS_AS(ghat(eng, -1), bad_argument_error);
}

TEST_CASE("first row satisfies the boundary identities") {
    Engine eng(7, 15, 10);
    FirstRow row = first_row(eng);

    CHECK(row.r3_agreement >= 15);
    CHECK(row.r2_zero_bound >= 15);
    CHECK(row.r1_zero_bound >= 15);
    CHECK(agree_to(row.r[3], PadicScalar::from_long(-1, eng.ctx()), 15));

    const Context& ctx = eng.ctx();
    // route 1: (24/25) Delta_3
    PadicScalar via_delta =
        PadicScalar::from_rational(QQ(24, 25), ctx).mul(eng.delta(3));
    CHECK(agree_to(row.r[0], via_delta, 15));

    // route 2: the explicit bracket polynomial (24/25)L_2 - (24/25)L_0 L_1 + (8/25)L_0^3
    const PadicScalar& l0 = eng.L(0).value;
    const PadicScalar& l1 = eng.L(1).value;
    const PadicScalar& l2 = eng.L(2).value;
    PadicScalar via_brackets = PadicScalar::from_rational(QQ(24, 25), ctx)
                                   .mul(l2)
                                   .sub(PadicScalar::from_rational(QQ(24, 25), ctx).mul(l0).mul(l1))
                                   .add(PadicScalar::from_rational(QQ(8, 25), ctx).mul(l0.pow_ui(3)));
    CHECK(agree_to(row.r[0], via_brackets, 15));
}

TEST_CASE("collapsed brute-force sum equals the literal six-fold loop") {
    Engine eng(3, 15, 10);
    const Context& ctx = eng.ctx();
    const long cutoff = 6;
    BruteForceRow bf = first_row_bruteforce(eng, cutoff);
    CHECK(bf.cutoff == cutoff);

    DworkCoefficients& bw = eng.dwork();
    std::array<QQ, 4> naive{QQ(0), QQ(0), QQ(0), QQ(0)};
    for (long i = 0; i <= cutoff; ++i)
        for (long j = 0; j <= cutoff; ++j)
            for (long k = 0; k <= cutoff; ++k)
                for (long n = 0; n <= cutoff; ++n)
                    for (long m = 0; m <= cutoff; ++m) {
                        QQ bprod = bw.at(i) * bw.at(j) * bw.at(k) * bw.at(n) * bw.at(m);
                        for (long s = 0; s <= cutoff; ++s) {
                            QQ w = bprod * bw.at(s);
                            MultiIndex I({i, j, k, n, m}, s + ctx.p() - 1);
                            for (int alpha = 0; alpha <= 3; ++alpha) {
                                QQ c = c_recursive(alpha, I);
                                if (c != 0) naive[alpha] += w * c;
                            }
                        }
                    }

    for (int alpha = 0; alpha <= 3; ++alpha) {
        CAPTURE(alpha);
        PadicScalar reference = PadicScalar::from_rational(naive[alpha], ctx);
        CHECK(agree_to(bf.r[alpha], reference, 15));
    }
}

TEST_CASE("truncation certificates are reproducible and monotone in range") {
    Engine eng(3, 15, 10);
    CHECK(bruteforce_certified_digits(eng, 110) == 1);
    CHECK(bruteforce_certified_digits(eng, 130) == 4);
    CHECK(bruteforce_certified_digits(eng, 140) == 6);
    CHECK(bruteforce_certified_digits(eng, 150) == 8);
    CHECK(bruteforce_cutoff_for(eng, 5) == 140);
    CHECK_THROWS_AS(bruteforce_certified_digits(eng, 2), bad_argument_error);
    CHECK_THROWS_AS(bruteforce_cutoff_for(eng, 0), bad_argument_error);
}

TEST_CASE("frobenius matrix shape, pairing, and commutation") {
    Engine eng(7, 15, 10);
    const Context& ctx = eng.ctx();
    FrobeniusMatrix std_m = frobenius_matrix(eng, Convention::standard);
    FrobeniusMatrix dw_m = frobenius_matrix(eng, Convention::dwork);

    for (int i = 0; i < 4; ++i) {
        CHECK(std_m.entries[i][i].valuation() == 3 - i);
        CHECK(std_m.entries[i][i].unit_mod(20) == 1);
        CHECK(dw_m.entries[i][i].valuation() == 5 - i);
        CHECK(dw_m.entries[i][i].unit_mod(20) == 1);
        for (int j = 0; j < 4; ++j) {
            if (i == j || (i == 0 && j == 3)) continue;
            CHECK(std_m.entries[i][j].is_exact_zero());
            CHECK(dw_m.entries[i][j].is_exact_zero());
        }
    }

    // the single off-diagonal entry: p^3 (24/25) Delta_3, and p^2 times that
    // in the dwork convention
    PadicScalar expected = PadicScalar::from_rational(QQ(343) * QQ(24, 25), ctx).mul(eng.delta(3));
    CHECK(agree_to(std_m.entries[0][3], expected, 15));
    PadicScalar p2 = PadicScalar::from_long(49, ctx);
    CHECK(agree_to(dw_m.entries[0][3], p2.mul(std_m.entries[0][3]), 15));
    CHECK(std_m.entries[0][3].valuation() == 3 + eng.delta(3).valuation());

    CHECK(symplectic_zero_bound(std_m) >= 15);
    CHECK(symplectic_zero_bound(dw_m) >= 15);
    CHECK(delta_commutation_zero_bound(std_m) >= 15);
    CHECK(delta_commutation_zero_bound(dw_m) >= 15);
}

TEST_CASE("the geometric layer refuses p = 5 while generic layers accept it") {
    Engine eng(5, 15, 10);
    CHECK(eng.ctx().p() == 5);
    CHECK_THROWS_AS(ghat(eng, 1), bad_prime_error);
    CHECK_THROWS_AS(first_row(eng), bad_prime_error);
    CHECK_THROWS_AS(frobenius_matrix(eng, Convention::standard), bad_prime_error);
    CHECK_THROWS_AS(bruteforce_certified_digits(eng, 30), bad_prime_error);
    CHECK_THROWS_AS(bruteforce_cutoff_for(eng, 5), bad_prime_error);
}
