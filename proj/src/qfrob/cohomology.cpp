#include "qfrob/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

namespace qfrob {

namespace {

using Row4 = std::array<PadicScalar, 4>;
using Mat4 = std::array<Row4, 4>;

Mat4 zero_matrix(const Context& ctx) {
    PadicScalar z = PadicScalar::zero(ctx);
    Row4 row{z, z, z, z};
    return Mat4{row, row, row, row};
}

Mat4 mat_mul(const Mat4& a, const Mat4& b, const Context& ctx) {
    Mat4 out = zero_matrix(ctx);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            PadicScalar acc = PadicScalar::zero(ctx);
            for (int k = 0; k < 4; ++k) {
                if (a[i][k].is_exact_zero() || b[k][j].is_exact_zero()) continue;
                acc = acc.add(a[i][k].mul(b[k][j]));
            }
            out[i][j] = std::move(acc);
        }
    }
    return out;
}

Mat4 transpose(const Mat4& a) {
    Mat4 out = a;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) out[i][j] = a[j][i];
    return out;
}

Mat4 scale(const Mat4& a, const PadicScalar& c) {
    Mat4 out = a;
    for (auto& row : out)
        for (auto& e : row) e = c.mul(e);
    return out;
}

// min over entries of the certified zero bound of a - b
long min_diff_zero_bound(const Mat4& a, const Mat4& b) {
    long bound = kValInf;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            bound = std::min(bound, a[i][j].sub(b[i][j]).valuation_floor());
    return bound;
}

} // namespace

OmegaSVector delta_power_expansion(int i) {
    if (i < 0) throw bad_argument_error("delta_power_expansion: i must be >= 0");
    OmegaSVector cur{{0, QQ(1)}};
    for (int step = 0; step < i; ++step) {
        OmegaSVector next;
        for (const auto& [s, c] : cur) {
            next[s] -= QQ(s + 1) * c;
            next[s + 1] -= c;
        }
        cur = std::move(next);
    }
    return cur;
}

std::array<QQ, 4> picard_fuchs_solve() {
    // Unknowns x = (a3, a2, a1, a0); equation s (s = 0..3) matches the
    // pi^s omega_s coordinate of a3 d^3 + a2 d^2 + a1 d + a0 against
    // delta^4 omega with its omega_4 component dropped.
    std::array<OmegaSVector, 5> d;
    for (int i = 0; i <= 4; ++i) d[i] = delta_power_expansion(i);

    QQ m[4][5];
    for (long s = 0; s < 4; ++s) {
        for (int col = 0; col < 4; ++col) {
            const OmegaSVector& vec = d[3 - col];
            auto it = vec.find(s);
            m[s][col] = it == vec.end() ? QQ(0) : it->second;
        }
        auto it = d[4].find(s);
        m[s][4] = it == d[4].end() ? QQ(0) : it->second;
    }

    // exact Gaussian elimination with row pivoting
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (m[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw singular_system_error("picard_fuchs_solve: singular system");
        for (int c = 0; c < 5; ++c) std::swap(m[col][c], m[piv][c]);
        QQ inv = QQ(1) / m[col][col];
        for (int c = col; c < 5; ++c) m[col][c] *= inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || m[r][col] == 0) continue;
            QQ f = m[r][col];
            for (int c = col; c < 5; ++c) m[r][c] -= f * m[col][c];
        }
    }
    return {m[0][4], m[1][4], m[2][4], m[3][4]};
}

MultiIndex::MultiIndex(std::array<long, 5> indices, long s_index) : idx(indices), s(s_index) {
    for (long v : idx)
        if (v < 0) throw bad_argument_error("MultiIndex: indices must be >= 0");
    if (s < 0) throw bad_argument_error("MultiIndex: s must be >= 0");
    std::sort(idx.begin(), idx.end(), std::greater<long>());
}

int MultiIndex::sharp() const {
    int n = 0;
    for (long v : idx)
        if (v != 0) ++n;
    return n;
}

namespace {

using CKey = std::tuple<int, std::array<long, 5>, long>;
std::map<CKey, QQ> g_c_memo;          // guarded by g_c_mutex
std::mutex g_c_mutex;

// assumes g_c_mutex held
QQ c_rec_locked(int alpha, const std::array<long, 5>& idx, long s) {
    if (alpha > 3) return QQ(0);
    CKey key{alpha, idx, s};
    if (auto it = g_c_memo.find(key); it != g_c_memo.end()) return it->second;
    QQ result;
    if (s > 0) {
        result = QQ(s) * c_rec_locked(alpha, idx, s - 1) - c_rec_locked(alpha + 1, idx, s - 1);
    } else if (idx[0] > 0) {
        const long i = idx[0] - 1;
        std::array<long, 5> j = idx;
        j[0] = i;
        std::sort(j.begin(), j.end(), std::greater<long>());
        result = QQ(i) * c_rec_locked(alpha, j, 0) + QQ(1, 5) * c_rec_locked(alpha + 1, j, 0);
    } else {
        result = QQ(alpha == 3 ? 1 : 0);
    }
    g_c_memo.emplace(std::move(key), result);
    return result;
}

DTable g_c_dtable; // shared by c_closed across primes (entries are p-free integers)
std::mutex g_c_dtable_mutex;

// assumes g_c_dtable_mutex held
QQ dhat_locked(int b, long i) {
    if (i == 0) return QQ(b == 0 ? 1 : 0);
    if (b > i - 1) return QQ(0);
    ZZ denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), 5, static_cast<unsigned long>(b) + 1);
    return QQ(g_c_dtable.d_value(b, i - 1)) / QQ(denom);
}

// product over slots `slot`..4 of Dhat factors, total budget `rem`
QQ dhat_product_locked(const std::array<long, 5>& idx, int slot, int rem) {
    if (slot == 5) return QQ(rem == 0 ? 1 : 0);
    QQ acc(0);
    for (int b = 0; b <= rem; ++b) {
        QQ f = dhat_locked(b, idx[slot]);
        if (f != 0) acc += f * dhat_product_locked(idx, slot + 1, rem - b);
    }
    return acc;
}

} // namespace

QQ c_recursive(int alpha, const MultiIndex& I) {
    if (alpha < 0 || alpha > 3) throw bad_argument_error("c_recursive: alpha must be in 0..3");
    std::lock_guard<std::mutex> lock(g_c_mutex);
    return c_rec_locked(alpha, I.idx, I.s);
}

QQ c_closed(int alpha, const MultiIndex& I) {
    if (alpha < 0 || alpha > 3) throw bad_argument_error("c_closed: alpha must be in 0..3");
    const int chi = 3 - I.sharp() - alpha;
    if (chi < 0) return QQ(0);
    std::lock_guard<std::mutex> lock(g_c_dtable_mutex);
    g_c_dtable.ensure(3, std::max(I.s, I.idx[0]));
    QQ total(0);
    for (int g = 0; g <= chi; ++g) {
        if (g > I.s) continue; // D[g, s] = 0
        QQ dbar(g_c_dtable.d_value(g, I.s));
        if (dbar == 0) continue;
        if (g % 2 != 0) dbar = -dbar;
        total += dbar * dhat_product_locked(I.idx, 0, chi - g);
    }
    return total;
}

namespace {

// The geometric layer inherits the construction's standing assumption p != 5
// (the series and L-function layers below it are prime-generic).
void require_quintic_prime(const Context& ctx, const char* op) {
    if (ctx.p() == 5)
        throw bad_prime_error(std::string(op) +
                              ": the quintic Frobenius construction requires p != 5");
}

} // namespace

PadicScalar ghat(Engine& eng, int beta) {
    const Context& ctx = eng.ctx();
    require_quintic_prime(ctx, "ghat");
    if (beta < 0) throw bad_argument_error("ghat: beta must be >= 0");
    if (beta == 0) return PadicScalar::from_long(1, ctx);
    ZZ p5;
    mpz_ui_pow_ui(p5.get_mpz_t(), 5, static_cast<unsigned long>(beta));
    return eng.L(beta - 1).value.mul(PadicScalar::from_rational(QQ(1) / QQ(p5), ctx));
}

namespace {

// partitions of n (0 <= n <= small) into at most five positive parts,
// descending within each partition
void partitions_rec(int n, int max_part, int max_len, std::vector<int>& cur,
                    std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    if (max_len == 0) return;
    for (int first = std::min(n, max_part); first >= 1; --first) {
        cur.push_back(first);
        partitions_rec(n - first, first, max_len - 1, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> partitions_up_to_five(int n) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    partitions_rec(n, n, 5, cur, out);
    return out;
}

long binomial_small(long n, long k) {
    long r = 1;
    for (long t = 0; t < k; ++t) r = r * (n - t) / (t + 1);
    return r;
}

// ways to place the parts of a descending partition into five labelled slots
long placement_count(const std::vector<int>& part) {
    long ways = 1;
    long slots = 5;
    for (std::size_t i = 0; i < part.size();) {
        std::size_t j = i;
        while (j < part.size() && part[j] == part[i]) ++j;
        const long mult = static_cast<long>(j - i);
        ways *= binomial_small(slots, mult);
        slots -= mult;
        i = j;
    }
    return ways;
}

} // namespace

FirstRow first_row(Engine& eng) {
    const Context& ctx = eng.ctx();
    require_quintic_prime(ctx, "first_row");
    const PadicScalar z = PadicScalar::zero(ctx);
    FirstRow out{{z, z, z, z}, 0, 0, 0};
    for (int alpha = 0; alpha <= 3; ++alpha) {
        const int w = 3 - alpha;
        PadicScalar acc = PadicScalar::zero(ctx);
        for (int gamma = 0; gamma <= w; ++gamma) {
            for (const auto& part : partitions_up_to_five(w - gamma)) {
                PadicScalar t = eng.F(gamma).value;
                for (int b : part) t = t.mul(ghat(eng, b));
                t = t.mul(PadicScalar::from_long(placement_count(part), ctx));
                acc = acc.add(t);
            }
        }
        out.r[alpha] = std::move(acc);
    }

    const long n = ctx.digits();
    out.r3_agreement = agree_digits(out.r[3], PadicScalar::from_long(-1, ctx));
    out.r2_zero_bound = out.r[2].valuation_floor();
    out.r1_zero_bound = out.r[1].valuation_floor();
    if (out.r3_agreement < n)
        throw identity_violated_error("first_row: R_3 differs from -1 beyond tolerance");
    if (!is_zero_to(out.r[2], n))
        throw identity_violated_error("first_row: R_2 fails its vanishing identity");
    if (!is_zero_to(out.r[1], n))
        throw identity_violated_error("first_row: R_1 fails its vanishing identity");
    return out;
}

long bruteforce_certified_digits(Engine& eng, long cutoff) {
    const Context& ctx = eng.ctx();
    require_quintic_prime(ctx, "bruteforce_certified_digits");
    const long p = ctx.p();
    if (cutoff < p) throw bad_argument_error("bruteforce_certified_digits: cutoff too small");
    DworkCoefficients& bw = eng.dwork();
    DTable& dt = eng.dtable();
    bw.ensure(cutoff);
    dt.ensure(3, cutoff + p - 1);

    // v_p(D[a, beta]) with +infinity for the zero entries
    auto d_val = [&](int a, long beta) -> long {
        if (a > beta) return kValInf;
        const ZZ& d = dt.d_value(a, beta);
        if (d == 0) return kValInf;
        return vp(d, p);
    };

    // exact per-slot minima inside the cutoff (clamped at 0: empty slots
    // contribute B_0 = 1 and a unit factor)
    QQ mu_idx(0);
    for (long n = 1; n <= cutoff; ++n) {
        long best = kValInf;
        for (int b = 0; b <= 3; ++b) best = std::min(best, d_val(b, n - 1));
        QQ v(bw.valuation(n) + best);
        if (v < mu_idx) mu_idx = v;
    }
    QQ mu_s(0);
    for (long s = 0; s <= cutoff; ++s) {
        long best = kValInf;
        for (int g = 0; g <= 3; ++g) best = std::min(best, d_val(g, s + p - 1));
        QQ v(bw.valuation(s) + best);
        if (v < mu_s) mu_s = v;
    }

    // analytic floor for a slot beyond the cutoff:
    //   v(B_m) >= m(p-1)/p^2 - m/(p-1)  and  v(D[b, beta]) >= v(beta!) - b floor(log_p beta)
    auto log_floor = [p](long m) {
        long l = 0;
        for (long q = p; q <= m; q *= p) ++l;
        return l;
    };
    auto phi = [&](long m, long beta) -> QQ {
        return dwork_coefficient_floor(m, p) +
               QQ(factorial_valuation(beta, p) - 3 * log_floor(beta));
    };
    // the floors grow ~ m(p-1)/p^2 - O(log m), so the minimum over a window of
    // p^2 cutoffs is the global minimum beyond the cutoff
    const long window_end = cutoff * p * p + 10;
    QQ lo_idx = phi(cutoff + 1, cutoff);
    QQ lo_s = phi(cutoff + 1, cutoff + p);
    for (long m = cutoff + 2; m <= window_end; ++m) {
        lo_idx = std::min(lo_idx, phi(m, m - 1));
        lo_s = std::min(lo_s, phi(m, m + p - 1));
    }

    const QQ zero(0);
    QQ certified;
    if (lo_idx >= 0 && lo_s >= 0) {
        // every discarded term has some slot beyond the cutoff; since the
        // beyond-cutoff floors are nonnegative, the worst case is a single
        // overflowing slot paired with the worst in-range companions
        QQ tail_idx = lo_idx + QQ(4) * std::min(zero, mu_idx) + std::min(zero, mu_s);
        QQ tail_s = lo_s + QQ(5) * std::min(zero, mu_idx);
        certified = std::min(tail_idx, tail_s);
    } else {
        // crude fallback: bound every slot of every term independently
        QQ slot = std::min(zero, std::min(mu_idx, lo_idx));
        QQ sslot = std::min(zero, std::min(mu_s, lo_s));
        certified = QQ(5) * slot + sslot;
    }

    // term valuations are integers, so v >= certified implies v >= ceil
    ZZ q;
    mpz_cdiv_q(q.get_mpz_t(), certified.get_num().get_mpz_t(), certified.get_den().get_mpz_t());
    return q.get_si();
}

long bruteforce_cutoff_for(Engine& eng, long digit_target) {
    if (digit_target < 1)
        throw bad_argument_error("bruteforce_cutoff_for: digit_target must be >= 1");
    for (long cutoff = 30; cutoff <= 400; cutoff += 10)
        if (bruteforce_certified_digits(eng, cutoff) >= digit_target) return cutoff;
    throw bad_argument_error("bruteforce_cutoff_for: no cutoff up to 400 certifies the target");
}

BruteForceRow first_row_bruteforce(Engine& eng, long cutoff) {
    const Context& ctx = eng.ctx();
    const long p = ctx.p();
    const long cert = bruteforce_certified_digits(eng, cutoff); // also extends the tables
    const long sigma_max = cutoff + p - 1;

    const PadicScalar zero = PadicScalar::zero(ctx);
    const PadicScalar fifth = PadicScalar::from_rational(QQ(1, 5), ctx);

    std::vector<PadicScalar> bpad;
    bpad.reserve(cutoff + 1);
    for (long n = 0; n <= cutoff; ++n)
        bpad.push_back(PadicScalar::from_rational(eng.dwork().at(n), ctx));
    std::vector<PadicScalar> nums;
    nums.reserve(sigma_max + 1);
    for (long x = 0; x <= sigma_max; ++x) nums.push_back(PadicScalar::from_long(x, ctx));

    using Vec4 = std::array<PadicScalar, 4>;
    const Vec4 base{zero, zero, zero, PadicScalar::from_long(1, ctx)};

    // index step at s = 0: from c_{(x) rest} to c_{(x+1) rest}
    auto istep = [&](const Vec4& v, long x) {
        Vec4 out{zero, zero, zero, zero};
        for (int a = 0; a < 4; ++a) {
            PadicScalar t = v[a].is_exact_zero() ? zero : nums[x].mul(v[a]);
            if (a < 3 && !v[a + 1].is_exact_zero()) t = t.add(fifth.mul(v[a + 1]));
            out[a] = std::move(t);
        }
        return out;
    };

    Vec4 acc{zero, zero, zero, zero};
    // evolve one seed through the s-relation, dot with the B-weights, and
    // fold the result into acc with its placement count and index weights
    auto fold = [&](Vec4 v, const PadicScalar& bweight, long placements) {
        Vec4 inner{zero, zero, zero, zero};
        for (long sigma = 0; sigma <= sigma_max; ++sigma) {
            if (sigma > 0) {
                for (int a = 0; a < 4; ++a) { // ascending a reads the old a+1
                    PadicScalar t = v[a].is_exact_zero() ? zero : nums[sigma].mul(v[a]);
                    if (a < 3 && !v[a + 1].is_exact_zero()) t = t.sub(v[a + 1]);
                    v[a] = std::move(t);
                }
            }
            if (sigma >= p - 1) {
                const PadicScalar& bs = bpad[sigma - (p - 1)];
                for (int a = 0; a < 4; ++a)
                    if (!v[a].is_exact_zero()) inner[a] = inner[a].add(bs.mul(v[a]));
            }
        }
        const PadicScalar w = bweight.mul(PadicScalar::from_long(placements, ctx));
        for (int a = 0; a < 4; ++a)
            if (!inner[a].is_exact_zero()) acc[a] = acc[a].add(w.mul(inner[a]));
    };

    // all-zero index multiset
    fold(base, PadicScalar::from_long(1, ctx), 1);

    // single nonzero index (a); keep the seeds for the pair stage
    std::vector<Vec4> single;
    single.reserve(cutoff + 1);
    single.push_back(base);
    for (long a = 1; a <= cutoff; ++a) {
        single.push_back(istep(single.back(), a - 1));
        fold(single.back(), bpad[a], 5);
    }

    // pairs {b >= c} and, hanging off each pair seed, triples {a >= b >= c};
    // four or five nonzero indices vanish identically for every alpha >= 0
    for (long c = 1; c <= cutoff; ++c) {
        Vec4 pairv = single[c];
        for (long b = 1; b <= cutoff; ++b) {
            pairv = istep(pairv, b - 1);
            if (b < c) continue;
            const PadicScalar bc = bpad[b].mul(bpad[c]);
            fold(pairv, bc, b == c ? 10 : 20);
            Vec4 triv = pairv;
            for (long a = 1; a <= cutoff; ++a) {
                triv = istep(triv, a - 1);
                if (a < b) continue;
                const long placements = (a == b && b == c) ? 10 : ((a == b || b == c) ? 30 : 60);
                fold(triv, bc.mul(bpad[a]), placements);
            }
        }
    }

    return BruteForceRow{std::move(acc), cutoff, cert};
}

FrobeniusMatrix frobenius_matrix(Engine& eng, Convention convention) {
    const Context& ctx = eng.ctx();
    const long p = ctx.p();

    FirstRow row0 = first_row(eng); // enforces R_3 = -1, R_2 = R_1 = 0
    PadicScalar delta3 = eng.delta(3);

    ZZ p3z;
    mpz_ui_pow_ui(p3z.get_mpz_t(), static_cast<unsigned long>(p), 3);
    const PadicScalar p3 = PadicScalar::from_rational(QQ(p3z), ctx);
    const PadicScalar corner = p3.mul(row0.r[0]);
    const PadicScalar expected =
        p3.mul(PadicScalar::from_rational(QQ(24, 25), ctx)).mul(delta3);
    if (!agree_to(corner, expected, ctx.digits()))
        throw identity_violated_error(
            "frobenius_matrix: corner entry disagrees with the (24/25) Delta_3 route");

    Mat4 entries = zero_matrix(ctx);
    for (int i = 0; i < 4; ++i) {
        ZZ pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p), 3 - i);
        entries[i][i] = PadicScalar::from_rational(QQ(pw), ctx);
    }
    entries[0][3] = corner;

    if (convention == Convention::dwork) {
        const PadicScalar p2 = PadicScalar::from_rational(QQ(ZZ(p) * ZZ(p)), ctx);
        for (auto& row : entries)
            for (auto& e : row)
                if (!e.is_exact_zero()) e = p2.mul(e);
    }

    return FrobeniusMatrix{std::move(entries), convention, std::move(delta3), std::move(row0)};
}

long symplectic_zero_bound(const FrobeniusMatrix& m) {
    const Context& ctx = m.delta3.context();
    const long p = ctx.p();
    const int e = m.convention == Convention::dwork ? 7 : 3;

    Mat4 gram = zero_matrix(ctx);
    gram[0][3] = PadicScalar::from_long(1, ctx);
    gram[1][2] = PadicScalar::from_long(-1, ctx);
    gram[2][1] = PadicScalar::from_long(1, ctx);
    gram[3][0] = PadicScalar::from_long(-1, ctx);

    Mat4 lhs = mat_mul(mat_mul(transpose(m.entries), gram, ctx), m.entries, ctx);
    ZZ pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), static_cast<unsigned long>(p), e);
    Mat4 rhs = scale(gram, PadicScalar::from_rational(QQ(pe), ctx));
    return min_diff_zero_bound(lhs, rhs);
}

long delta_commutation_zero_bound(const FrobeniusMatrix& m) {
    const Context& ctx = m.delta3.context();
    Mat4 d = zero_matrix(ctx);
    d[0][1] = PadicScalar::from_long(1, ctx);
    d[1][2] = PadicScalar::from_long(1, ctx);
    d[2][3] = PadicScalar::from_long(1, ctx);

    Mat4 lhs = mat_mul(m.entries, d, ctx);
    Mat4 rhs = scale(mat_mul(d, m.entries, ctx), PadicScalar::from_long(ctx.p(), ctx));
    return min_diff_zero_bound(lhs, rhs);
}

} // namespace qfrob
