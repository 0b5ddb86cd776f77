#include "qfrob/lfunction.hpp"

#include <algorithm>

namespace qfrob {

std::vector<QQ> bernoulli_numbers(int n_max) {
    if (n_max < 0) throw bad_argument_error("bernoulli_numbers: n_max must be >= 0");
    std::vector<QQ> bern;
    bern.reserve(n_max + 1);
    bern.emplace_back(1);
    for (int m = 1; m <= n_max; ++m) {
        QQ acc(0);
        for (int k = 0; k < m; ++k) {
            ZZ c;
            mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(m) + 1,
                         static_cast<unsigned long>(k));
            acc += QQ(c) * bern[k];
        }
        bern.push_back(-acc / QQ(m + 1));
    }
    return bern;
}

LValue lp_value(const Context& ctx, long s, int modulus_power, long min_terms) {
    const long p = ctx.p();
    if (s < 3 || s % 2 == 0)
        throw bad_argument_error("lp_value: s must be an odd integer >= 3");
    if (modulus_power < 1 || modulus_power > 3)
        throw bad_argument_error("lp_value: modulus_power must be in 1..3");
    if (min_terms < 0) throw bad_argument_error("lp_value: min_terms must be >= 0");

    // Truncation: term j of the inner series is C(1-s,j) (F/a)^j Bern_j with
    // v_p >= j*modulus_power - 1 (von Staudt-Clausen), so stopping once
    // j*modulus_power - 1 > target leaves a tail above the kept precision.
    const long target = ctx.working();
    const long jmax =
        std::max((target + 5 + modulus_power - 1) / modulus_power, min_terms);

    const std::vector<QQ> bern = bernoulli_numbers(static_cast<int>(jmax));
    ZZ fz;
    mpz_ui_pow_ui(fz.get_mpz_t(), static_cast<unsigned long>(p),
                  static_cast<unsigned long>(modulus_power));
    const QQ f(fz);

    QQ outer(0);
    for (ZZ a(1); a < fz; ++a) {
        if (mpz_divisible_ui_p(a.get_mpz_t(), static_cast<unsigned long>(p)) != 0) continue;
        const QQ fa = f / QQ(a);
        QQ inner(0);
        QQ binom(1); // C(1-s, j), updated multiplicatively
        QQ fa_pow(1);
        for (long j = 0; j <= jmax; ++j) {
            if (j > 0) {
                binom *= QQ(1 - s - (j - 1)) / QQ(j);
                fa_pow *= fa;
            }
            if (bern[j] == 0) continue;
            inner += binom * fa_pow * bern[j];
        }
        ZZ apow;
        mpz_pow_ui(apow.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(s - 1));
        outer += inner / QQ(apow);
    }

    const long outer_valuation = outer == 0 ? kValInf : vp(outer, p);
    const bool caveat = p == 3;
    if (!caveat && outer_valuation < 1)
        throw inner_sum_valuation_error("lp_value: outer sum valuation below 1 at p = " +
                                        std::to_string(p));

    const QQ total = outer / f / QQ(s - 1);
    PadicScalar value =
        total == 0 ? PadicScalar::zero_mod(ctx, target)
                   : PadicScalar::from_rational(total, ctx).truncate_abs(target);

    const long character = ((1 - s) % (p - 1) + (p - 1)) % (p - 1);
    return LValue{s, character, std::move(value), jmax + 1, outer_valuation, caveat};
}

LValue zeta_p(const Context& ctx, long s) {
    LValue lv = lp_value(ctx, s);
    ZZ ps;
    mpz_ui_pow_ui(ps.get_mpz_t(), static_cast<unsigned long>(ctx.p()),
                  static_cast<unsigned long>(s));
    const ZZ psm1 = ps - 1;
    const QQ ratio = QQ(ps) / QQ(psm1);
    lv.value = lv.value.mul(PadicScalar::from_rational(ratio, ctx));
    return lv;
}

Delta3Comparison compare_delta3(Engine& eng) {
    const Context& ctx = eng.ctx();
    PadicScalar delta3 = eng.delta(3);
    LValue lv = lp_value(ctx, 3);
    PadicScalar lp_over_3 = lv.value.div(PadicScalar::from_long(3, ctx));
    const long digits = agree_digits(delta3, lp_over_3);

    Delta3Comparison out{std::move(delta3), std::move(lp_over_3), digits, digits >= 10,
                         lv.caveat};
    return out;
}

} // namespace qfrob
