#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qfrob/padic.hpp"

using namespace qfrob;

TEST_CASE("context validates primes and precision") {
    CHECK_THROWS_AS(Context(2, 15, 10), bad_prime_error);
    CHECK_THROWS_AS(Context(4, 15, 10), bad_prime_error);
    CHECK_THROWS_AS(Context(9, 15, 10), bad_prime_error);
    CHECK_THROWS_AS(Context(-3, 15, 10), bad_prime_error);
    CHECK_THROWS_AS(Context(7, 0, 10), bad_argument_error);
    CHECK_THROWS_AS(Context(7, 15, -1), bad_argument_error);
    Context ctx(7, 15, 10);
    CHECK(ctx.working() == 25);
    CHECK(ctx.pk(3) == 343);
    // p = 5 is a valid scalar context (only the quintic layer refuses it)
    Context c5(5, 15, 10);
    CHECK(c5.p() == 5);
}

TEST_CASE("rational embedding: small fractions") {
    Context c3(3, 15, 10);
    PadicScalar half = PadicScalar::from_rational(QQ(1) / QQ(2), c3);
    CHECK(half.valuation() == 0);
    CHECK(half.unit_mod(1) == 2); // 2·2 = 4 ≡ 1 (mod 3)
    PadicScalar two = PadicScalar::from_long(2, c3);
    CHECK(agree_to(half.mul(two), PadicScalar::from_long(1, c3), 15));

    // 2730 = 2·3·5·7·13, so -691/2730 has valuation -1 at p = 7
    Context c7(7, 15, 10);
    PadicScalar b12 = PadicScalar::from_rational(QQ(-691) / QQ(2730), c7);
    CHECK(b12.valuation() == -1);
    CHECK(agree_to(b12.mul(PadicScalar::from_long(2730, c7)),
                   PadicScalar::from_long(-691, c7), 15));
}

TEST_CASE("digit expansion matches hand computation") {
    // 1/2 = 2 + 1·3 + 1·9 + ... since 2·14 = 28 ≡ 1 (mod 27)
    Context c3(3, 15, 10);
    PadicScalar half = PadicScalar::from_rational(QQ(1) / QQ(2), c3);
    CHECK(half.digits(3) == std::vector<int>{2, 1, 1});

    Context c13(13, 15, 10);
    PadicScalar sixth = PadicScalar::from_rational(QQ(1) / QQ(6), c13);
    CHECK(agree_to(sixth.mul(PadicScalar::from_long(6, c13)),
                   PadicScalar::from_long(1, c13), 15));
    CHECK(sixth.unit_mod(1) == 11); // 6·11 = 66 ≡ 1 (mod 13)
}

TEST_CASE("ring homomorphism on random rationals") {
    Context ctx(3, 15, 10);
    std::mt19937 rng(12345);
    std::uniform_int_distribution<long> num(-50, 50);
    std::uniform_int_distribution<long> den(1, 50);
    for (int trial = 0; trial < 200; ++trial) {
        long an = num(rng), bn = num(rng);
        if (an == 0 || bn == 0) continue;
        QQ a = QQ(an) / QQ(den(rng));
        QQ b = QQ(bn) / QQ(den(rng));
        PadicScalar xa = PadicScalar::from_rational(a, ctx);
        PadicScalar xb = PadicScalar::from_rational(b, ctx);
        QQ s = a + b;
        if (s != 0)
            CHECK(agree_to(xa.add(xb), PadicScalar::from_rational(s, ctx), 15));
        CHECK(agree_to(xa.mul(xb), PadicScalar::from_rational(a * b, ctx), 15));
        CHECK(agree_to(xa.div(xb), PadicScalar::from_rational(a / b, ctx), 15));
    }
}

TEST_CASE("ultrametric inequality and cancellation tracking") {
    Context ctx(7, 15, 10);
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> num(1, 1000);
    for (int trial = 0; trial < 100; ++trial) {
        PadicScalar x = PadicScalar::from_long(num(rng), ctx);
        PadicScalar y = PadicScalar::from_long(num(rng), ctx);
        CHECK(x.add(y).valuation_floor() >=
              std::min(x.valuation_floor(), y.valuation_floor()));
    }
    // exact cancellation leaves an inexact zero at the shared absolute precision
    PadicScalar x = PadicScalar::from_long(41, ctx);
    PadicScalar d = x.sub(x);
    CHECK(d.kind() == PadicScalar::Kind::inexact_zero);
    CHECK(d.valuation_floor() == 25);
    CHECK(is_zero_to(d, 15));
    CHECK_THROWS_AS(d.valuation(), precision_exhausted_error);
}

TEST_CASE("exact zero is absorbing and neutral") {
    Context ctx(7, 15, 10);
    PadicScalar z = PadicScalar::zero(ctx);
    PadicScalar x = PadicScalar::from_long(10, ctx);
    CHECK(z.mul(x).is_exact_zero());
    CHECK(agree_to(z.add(x), x, 15));
    CHECK(z.valuation() == kValInf);
    CHECK(z.known_digits() == kValInf);
    CHECK_THROWS_AS(x.div(z), division_by_zero_error);
    CHECK_THROWS_AS(x.div(PadicScalar::zero_mod(ctx, 25)), precision_exhausted_error);
    CHECK(agree_to(x.pow_ui(0), PadicScalar::from_long(1, ctx), 15));
}

TEST_CASE("teichmuller lifts") {
    // frozen: omega(2) at p = 5 is 6139557 mod 5^10 (independent fixed-point
    // iteration of x -> x^5); omega(3) at p = 7 below
    Context c5(5, 15, 10);
    PadicScalar t2_5 = teichmuller(2, c5);
    CHECK(t2_5.unit_mod(10) == ZZ("6139557"));
    CHECK(agree_to(t2_5.pow_ui(4), PadicScalar::from_long(1, c5), 15));

    Context c7(7, 15, 10);
    PadicScalar t3 = teichmuller(3, c7);
    CHECK(t3.unit_mod(8) == ZZ("2387948"));
    CHECK(agree_to(t3.pow_ui(6), PadicScalar::from_long(1, c7), 15));
    // Frobenius fixed point: t^p = t
    CHECK(agree_to(t3.pow_ui(7), t3, 15));
    CHECK(t3.unit_mod(1) == 3);

    Context c3(3, 15, 10);
    PadicScalar t2 = teichmuller(2, c3);
    // ω(2) = -1 at p = 3 (the only nontrivial root of unity)
    CHECK(agree_to(t2, PadicScalar::from_long(-1, c3), 15));
    CHECK_THROWS_AS(teichmuller(6, c3), not_coprime_error);
}

TEST_CASE("rendering and parsing digit strings") {
    Context ctx(13, 15, 10);
    CHECK(render_digits(PadicScalar::zero(ctx), 3) == "0");
    CHECK(render_digits(PadicScalar::zero_mod(ctx, 9), 3) == "O(13^9)");

    Context c3(3, 15, 10);
    PadicScalar one = PadicScalar::from_long(1, c3);
    CHECK(render_digits(one, 3) == "1 + 0·3 + 0·3²");
    PadicScalar minus_one = PadicScalar::from_long(-1, c3);
    CHECK(render_digits(minus_one, 3) == "2 + 2·3 + 2·3²");
    PadicScalar seventeen = PadicScalar::from_long(17, c3); // 2 + 2·3 + 1·9
    CHECK(render_digits(seventeen, 2) == "2 + 2·3");
    PadicScalar ninth = PadicScalar::from_rational(QQ(2) / QQ(9), c3);
    CHECK(render_digits(ninth, 2) == "3^-2 · 2 + 0·3");

    std::mt19937 rng(999);
    std::uniform_int_distribution<long> num(-200, 200);
    std::uniform_int_distribution<long> den(1, 200);
    for (int trial = 0; trial < 50; ++trial) {
        long n = num(rng);
        if (n == 0) continue;
        PadicScalar x = PadicScalar::from_rational(QQ(n) / QQ(den(rng)), c3);
        PadicScalar back = parse_digits(render_digits(x, 12), c3);
        CHECK(agree_to(x, back, 12));
    }
    CHECK(parse_digits("0", c3).is_exact_zero());
}

TEST_CASE("agreement measurement") {
    Context ctx(7, 15, 10);
    PadicScalar a = PadicScalar::from_long(100, ctx);
    PadicScalar b = PadicScalar::from_long(100 + 7 * 7 * 7, ctx); // differ from digit 3 on
    CHECK(agree_to(a, b, 3));
    CHECK(!agree_to(a, b, 4));
    CHECK(agree_digits(a, b) == 3);
    CHECK(agree_digits(a, a) == 25);

    // different valuations never agree beyond digit 0
    PadicScalar c = PadicScalar::from_long(7, ctx);
    CHECK(agree_digits(a, c) == 0);

    // comparing against an unresolved zero is a precision error, not "false"
    PadicScalar z = PadicScalar::zero_mod(ctx, 25);
    CHECK_THROWS_AS(agree_to(a, z, 3), precision_exhausted_error);
    CHECK_THROWS_AS(a.digits(26), precision_exhausted_error);
}

TEST_CASE("truncate_abs caps absolute precision") {
    Context ctx(7, 15, 10);
    PadicScalar x = PadicScalar::from_long(50, ctx);
    PadicScalar t = x.truncate_abs(5);
    CHECK(t.known_digits() == 5);
    CHECK(agree_to(x, t, 5));
    // truncating below the valuation loses the value entirely
    PadicScalar y = PadicScalar::from_rational(QQ(ZZ(49)), ctx);
    CHECK(y.truncate_abs(2).kind() == PadicScalar::Kind::inexact_zero);
}

TEST_CASE("sums across widely separated valuations stay exact") {
    // long products drift to valuations far beyond the working window; adding
    // them to low-valuation values must not materialize p^gap
    Context ctx(3, 15, 10);
    PadicScalar small = PadicScalar::from_long(7, ctx);
    PadicScalar huge = PadicScalar::from_long(3, ctx).pow_ui(90);
    CHECK(huge.valuation() == 90);

    PadicScalar s1 = small.add(huge);
    CHECK(s1.valuation() == 0);
    CHECK(s1.known_digits() == 25);
    CHECK(s1.unit_mod(25) == 7);
    CHECK(agree_digits(s1, huge.add(small)) == 25);

    // a shift landing inside the window does contribute
    PadicScalar mid = PadicScalar::from_long(3, ctx).pow_ui(20);
    PadicScalar s2 = small.add(mid);
    ZZ p20;
    mpz_ui_pow_ui(p20.get_mpz_t(), 3, 20);
    CHECK(s2.unit_mod(25) == ZZ(7) + p20);

    // cancellation far above the window still reports the right bound
    CHECK(huge.sub(huge).valuation_floor() == 115);
}
