// Command-line front end for the qfrob shared library. Talks to the library
// exclusively through the C interface in qfrob.h.
//
// Exit codes: 0 success (all checks passed), 1 at least one check failed,
// 2 usage or runtime error.

#include <CLI11.hpp>
#include <qfrob.h>

#include <functional>
#include <iostream>
#include <string>
#include <vector>

namespace {

struct CommonOpts {
    std::vector<long> primes;
    long prime = 7;
    int digits = 15;
    int margin = 10;
    long truncation_cap = 5000;
    std::string format = "text";
};

void add_common(CLI::App* cmd, CommonOpts& o, bool multi_prime) {
    auto* prime = cmd->add_option("-p,--prime", o.prime,
                                  "odd prime p (frobenius additionally requires p != 5)")
                      ->capture_default_str();
    if (multi_prime)
        cmd->add_option("--primes", o.primes, "comma-separated list of primes (overrides --prime)")
            ->delimiter(',')
            ->excludes(prime);
    cmd->add_option("--digits", o.digits, "reported precision N in base-p digits")
        ->capture_default_str();
    cmd->add_option("--margin", o.margin, "guard digits carried beyond N")
        ->capture_default_str();
    cmd->add_option("--truncation-cap", o.truncation_cap, "hard cap on series length")
        ->capture_default_str();
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
}

// "a..b" or a single integer
bool parse_range(const std::string& s, long& lo, long& hi) {
    try {
        const auto pos = s.find("..");
        if (pos == std::string::npos) {
            lo = hi = std::stol(s);
        } else {
            lo = std::stol(s.substr(0, pos));
            hi = std::stol(s.substr(pos + 2));
        }
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

// Runs `make_report` once per requested prime and prints the aggregate.
int run_for_primes(const CommonOpts& o,
                   const std::function<int(qfrob_ctx*, qfrob_report**)>& make_report) {
    const std::vector<long> primes = o.primes.empty() ? std::vector<long>{o.prime} : o.primes;
    const bool json = o.format == "json";

    std::vector<std::string> payloads;
    bool all_ok = true;
    for (const long p : primes) {
        qfrob_ctx* ctx = nullptr;
        int rc = qfrob_ctx_create(p, o.digits, o.margin, &ctx);
        if (rc == QFROB_OK) rc = qfrob_ctx_set_truncation_cap(ctx, o.truncation_cap);
        qfrob_report* rep = nullptr;
        if (rc == QFROB_OK) rc = make_report(ctx, &rep);
        if (rc != QFROB_OK) {
            std::cerr << "qfrob: " << qfrob_last_error() << " (error code " << rc << ")\n";
            qfrob_ctx_destroy(ctx);
            return 2;
        }
        std::string payload = json ? qfrob_report_json(rep) : qfrob_report_text(rep);
        if (!payload.empty() && payload.back() == '\n') payload.pop_back();
        payloads.push_back(std::move(payload));
        all_ok = all_ok && qfrob_report_ok(rep) == 1;
        qfrob_report_destroy(rep);
        qfrob_ctx_destroy(ctx);
    }

    if (json && payloads.size() > 1) {
        std::cout << "[\n";
        for (size_t i = 0; i < payloads.size(); ++i)
            std::cout << payloads[i] << (i + 1 < payloads.size() ? ",\n" : "\n");
        std::cout << "]\n";
    } else {
        for (size_t i = 0; i < payloads.size(); ++i)
            std::cout << payloads[i] << "\n" << (i + 1 < payloads.size() ? "\n" : "");
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qfrob — exact p-adic Frobenius data for the mirror-quintic boundary point.\n"
                 "Set QFROB_CACHE_DIR to persist Dwork coefficient tables between runs."};
    app.require_subcommand(1);

    CommonOpts fro_opts;
    std::string convention = "standard";
    auto* fro = app.add_subcommand(
        "frobenius", "compute the 4x4 Frobenius matrix and its structural checks");
    add_common(fro, fro_opts, true);
    fro->add_option("--convention", convention,
                    "matrix normalization: standard (diag p^3..1) or dwork (p^2 times that)")
        ->check(CLI::IsMember({"standard", "dwork"}))
        ->capture_default_str();

    CommonOpts ver_opts;
    std::string suite = "all";
    auto* ver = app.add_subcommand("verify", "run identity-check suites");
    add_common(ver, ver_opts, true);
    ver->add_option("--suite", suite, "which checks to run")
        ->check(CLI::IsMember({"all", "dwork", "brackets", "cohomology", "lfunction"}))
        ->capture_default_str();

    auto* tab = app.add_subcommand("tables", "dump exact coefficient tables");
    tab->require_subcommand(1);

    CommonOpts td_opts;
    long dwork_n = 10;
    auto* td = tab->add_subcommand("dwork", "Dwork exponential coefficients B_0..B_n");
    add_common(td, td_opts, false);
    td->add_option("-n,--n-max", dwork_n, "largest index to print")->capture_default_str();

    CommonOpts tm_opts;
    std::string alpha_range = "0..3";
    std::string beta_range = "0..10";
    auto* tm = tab->add_subcommand("dmatrix", "the integers D[alpha, beta]");
    add_common(tm, tm_opts, false);
    tm->add_option("--alpha", alpha_range, "alpha range, e.g. 0..3 or 2")->capture_default_str();
    tm->add_option("--beta", beta_range, "beta range, e.g. 0..5 or 4")->capture_default_str();

    CommonOpts tc_opts;
    int c_alpha = 2;
    long c_max_index = 2;
    auto* tc = tab->add_subcommand("cvalues",
                                   "pairing coefficients c^alpha_I (recursion, cross-checked "
                                   "against the closed composition formula)");
    add_common(tc, tc_opts, false);
    tc->add_option("--alpha", c_alpha, "upper index alpha (0..3)")->capture_default_str();
    tc->add_option("--max-index", c_max_index, "bound on every lower index including s")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (fro->parsed())
        return run_for_primes(fro_opts, [&](qfrob_ctx* ctx, qfrob_report** rep) {
            return qfrob_frobenius(ctx, convention.c_str(), rep);
        });

    if (ver->parsed())
        return run_for_primes(ver_opts, [&](qfrob_ctx* ctx, qfrob_report** rep) {
            return qfrob_verify(ctx, suite.c_str(), rep);
        });

    if (td->parsed())
        return run_for_primes(td_opts, [&](qfrob_ctx* ctx, qfrob_report** rep) {
            return qfrob_tables_dwork(ctx, dwork_n, rep);
        });

    if (tm->parsed()) {
        long alo = 0, ahi = 0, blo = 0, bhi = 0;
        if (!parse_range(alpha_range, alo, ahi) || !parse_range(beta_range, blo, bhi)) {
            std::cerr << "qfrob: ranges must look like 0..5 or 3\n";
            return 2;
        }
        return run_for_primes(tm_opts, [&](qfrob_ctx* ctx, qfrob_report** rep) {
            return qfrob_tables_dmatrix(ctx, static_cast<int>(alo), static_cast<int>(ahi), blo,
                                        bhi, rep);
        });
    }

    if (tc->parsed())
        return run_for_primes(tc_opts, [&](qfrob_ctx* ctx, qfrob_report** rep) {
            return qfrob_tables_cvalues(ctx, c_alpha, c_max_index, rep);
        });

    std::cerr << "qfrob: no command\n";
    return 2;
}
