#include "qfrob/brackets.hpp"

namespace qfrob {

namespace {
const ZZ kZeroZ(0);
const QQ kZeroQ(0);
} // namespace

void DTable::ensure(int alpha_max, long beta_max) {
    if (alpha_max < 0) return;
    if (static_cast<int>(rows_.size()) <= alpha_max) rows_.resize(alpha_max + 1);
    for (int a = 0; a < static_cast<int>(rows_.size()); ++a) {
        auto& row = rows_[a];
        if (row.empty()) row.push_back(a == 0 ? ZZ(1) : ZZ(0)); // D[a, 0]
        for (long b = static_cast<long>(row.size()); b <= beta_max; ++b) {
            ZZ v = ZZ(b) * row[b - 1];
            if (a > 0 && static_cast<long>(rows_[a - 1].size()) > b - 1)
                v += rows_[a - 1][b - 1];
            row.push_back(std::move(v));
        }
    }
}

const ZZ& DTable::d_value(int alpha, long beta) {
    if (alpha < 0 || beta < 0 || alpha > beta) return kZeroZ;
    ensure(alpha, beta);
    return rows_[alpha][beta];
}

void HarmonicTable::ensure(int alpha_max, long beta_max) {
    if (alpha_max < 0) return;
    if (static_cast<int>(rows_.size()) <= alpha_max) rows_.resize(alpha_max + 1);
    for (int a = 0; a < static_cast<int>(rows_.size()); ++a) {
        auto& row = rows_[a];
        if (row.empty()) row.push_back(QQ(0)); // S^a(0) = 0
        for (long b = static_cast<long>(row.size()); b <= beta_max; ++b) {
            if (b <= a) {
                row.push_back(QQ(0));
            } else if (a == 0) {
                row.push_back(QQ(1));
            } else {
                // S^a(b) = S^a(b-1) + S^{a-1}(b-1)/(b-1)
                QQ v = row[b - 1] + rows_[a - 1][b - 1] / QQ(b - 1);
                row.push_back(std::move(v));
            }
        }
    }
}

const QQ& HarmonicTable::s_value(int alpha, long beta) {
    if (alpha < 0 || beta < 0) return kZeroQ;
    ensure(alpha, beta);
    return rows_[alpha][beta];
}

BracketValue bracket_L(int gamma, DworkCoefficients& dwork, DTable& dtab, const Context& ctx,
                       const TruncationPolicy& policy) {
    if (gamma < 0) throw bad_argument_error("bracket_L: gamma must be >= 0");
    const long p = ctx.p();
    auto term = [&](long i) -> QQ { return dwork.at(i) * QQ(dtab.d_value(gamma, i - 1)); };
    auto tail = [p, gamma](long i) { return bracket_tail_floor(i, p, gamma, 0); };
    SeriesResult r = series_sum(term, tail, ctx, policy, 1);
    return {gamma, r.value, r.n_max_used};
}

BracketValue bracket_F(int gamma, DworkCoefficients& dwork, DTable& dtab, const Context& ctx,
                       const TruncationPolicy& policy, long* agreement_digits) {
    if (gamma < 0) throw bad_argument_error("bracket_F: gamma must be >= 0");
    const long p = ctx.p();
    auto term = [&](long s) -> QQ { return dwork.at(s) * QQ(dtab.d_value(gamma, s + p - 1)); };
    auto tail = [p, gamma](long s) { return bracket_tail_floor(s, p, gamma, p); };
    SeriesResult r = series_sum(term, tail, ctx, policy);
    PadicScalar direct =
        (gamma % 2 == 0) ? r.value : r.value.neg();

    PadicScalar expected = PadicScalar::zero(ctx);
    if (gamma == 0) {
        expected = PadicScalar::from_long(-1, ctx);
    } else {
        BracketValue lower = bracket_L(gamma - 1, dwork, dtab, ctx, policy);
        expected = (gamma % 2 == 0) ? lower.value.neg() : lower.value;
    }
    const long digits = agree_digits(direct, expected);
    if (agreement_digits) *agreement_digits = digits;
    if (digits < ctx.digits())
        throw reduction_identity_error(
            "bracket reduction violated at gamma=" + std::to_string(gamma) + ": " +
            std::to_string(digits) + " digits of agreement, need " +
            std::to_string(ctx.digits()));
    return {gamma, direct, r.n_max_used};
}

PadicScalar delta_s(int s, DworkCoefficients& dwork, DTable& dtab, const Context& ctx,
                    const TruncationPolicy& policy) {
    if (s < 1) throw bad_argument_error("delta_s: s must be >= 1");
    BracketValue top = bracket_L(s - 1, dwork, dtab, ctx, policy);
    BracketValue base = bracket_L(0, dwork, dtab, ctx, policy);
    ZZ fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(s));
    PadicScalar inv_fact = PadicScalar::from_rational(QQ(ZZ(1), fact), ctx);
    return top.value.sub(base.value.pow_ui(static_cast<unsigned long>(s)).mul(inv_fact));
}

} // namespace qfrob
