#include "qfrob.h"

#include <memory>
#include <string>

#include "qfrob/report.hpp"

struct qfrob_ctx {
    long prime;
    int digits;
    int margin;
    long truncation_cap = 5000;
    std::unique_ptr<qfrob::Engine> engine;

    qfrob::Engine& get_engine() {
        if (!engine)
            engine = std::make_unique<qfrob::Engine>(prime, digits, margin, truncation_cap);
        return *engine;
    }
};

struct qfrob_report {
    bool ok;
    std::string json;
    std::string text;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

// Runs f, mapping the library's exception hierarchy onto the C error codes.
template <typename F> int guarded(F&& f) noexcept {
    try {
        f();
        g_last_error.clear();
        return QFROB_OK;
    } catch (const qfrob::bad_prime_error& e) {
        set_error(e.what());
        return QFROB_ERR_BAD_PRIME;
    } catch (const qfrob::division_by_zero_error& e) {
        set_error(e.what());
        return QFROB_ERR_BAD_ARGUMENT;
    } catch (const qfrob::not_coprime_error& e) {
        set_error(e.what());
        return QFROB_ERR_BAD_ARGUMENT;
    } catch (const qfrob::bad_argument_error& e) {
        set_error(e.what());
        return QFROB_ERR_BAD_ARGUMENT;
    } catch (const qfrob::precision_exhausted_error& e) {
        set_error(e.what());
        return QFROB_ERR_PRECISION;
    } catch (const qfrob::truncation_cap_error& e) {
        set_error(e.what());
        return QFROB_ERR_TRUNCATION_CAP;
    } catch (const qfrob::identity_violated_error& e) {
        set_error(e.what()); // covers the reduction-identity subclass
        return QFROB_ERR_IDENTITY;
    } catch (const qfrob::inner_sum_valuation_error& e) {
        set_error(e.what());
        return QFROB_ERR_INNER_VALUATION;
    } catch (const qfrob::io_error& e) {
        set_error(e.what());
        return QFROB_ERR_IO;
    } catch (const std::exception& e) {
        set_error(e.what());
        return QFROB_ERR_INTERNAL;
    } catch (...) {
        set_error("unknown error");
        return QFROB_ERR_INTERNAL;
    }
}

int require(bool cond, const char* msg) {
    if (cond) return QFROB_OK;
    set_error(msg);
    return QFROB_ERR_BAD_ARGUMENT;
}

qfrob_report* wrap_report(const qfrob::Report& rep) {
    auto* out = new qfrob_report;
    out->ok = rep.ok();
    out->json = rep.to_json();
    out->text = rep.to_text();
    return out;
}

} // namespace

extern "C" {

int qfrob_ctx_create(long prime, int digits, int margin, qfrob_ctx** out) {
    if (int rc = require(out != nullptr, "qfrob_ctx_create: out must not be null")) return rc;
    *out = nullptr;
    return guarded([&] {
        auto ctx = std::make_unique<qfrob_ctx>();
        ctx->prime = prime;
        ctx->digits = digits;
        ctx->margin = margin;
        ctx->get_engine(); // validate the configuration eagerly
        *out = ctx.release();
    });
}

int qfrob_ctx_set_truncation_cap(qfrob_ctx* ctx, long cap) {
    if (int rc = require(ctx != nullptr, "qfrob_ctx_set_truncation_cap: ctx must not be null"))
        return rc;
    if (int rc = require(cap >= 1, "qfrob_ctx_set_truncation_cap: cap must be >= 1")) return rc;
    ctx->truncation_cap = cap;
    ctx->engine.reset();
    return QFROB_OK;
}

void qfrob_ctx_destroy(qfrob_ctx* ctx) { delete ctx; }

const char* qfrob_last_error(void) { return g_last_error.c_str(); }

int qfrob_frobenius(qfrob_ctx* ctx, const char* convention, qfrob_report** out) {
    if (int rc = require(ctx != nullptr && convention != nullptr && out != nullptr,
                         "qfrob_frobenius: null argument"))
        return rc;
    *out = nullptr;
    return guarded([&] {
        const std::string conv(convention);
        if (conv != "standard" && conv != "dwork")
            throw qfrob::bad_argument_error("frobenius: convention must be standard or dwork");
        qfrob::Report rep = qfrob::run_frobenius(
            ctx->get_engine(),
            conv == "dwork" ? qfrob::Convention::dwork : qfrob::Convention::standard);
        *out = wrap_report(rep);
    });
}

int qfrob_verify(qfrob_ctx* ctx, const char* suite, qfrob_report** out) {
    if (int rc =
            require(ctx != nullptr && suite != nullptr && out != nullptr, "qfrob_verify: null argument"))
        return rc;
    *out = nullptr;
    return guarded([&] {
        qfrob::Report rep = qfrob::run_verify(ctx->get_engine(), suite);
        *out = wrap_report(rep);
    });
}

int qfrob_tables_dwork(qfrob_ctx* ctx, long n_max, qfrob_report** out) {
    if (int rc = require(ctx != nullptr && out != nullptr, "qfrob_tables_dwork: null argument"))
        return rc;
    *out = nullptr;
    return guarded([&] { *out = wrap_report(qfrob::run_tables_dwork(ctx->get_engine(), n_max)); });
}

int qfrob_tables_dmatrix(qfrob_ctx* ctx, int alpha_lo, int alpha_hi, long beta_lo, long beta_hi,
                         qfrob_report** out) {
    if (int rc = require(ctx != nullptr && out != nullptr, "qfrob_tables_dmatrix: null argument"))
        return rc;
    *out = nullptr;
    return guarded([&] {
        *out = wrap_report(
            qfrob::run_tables_dmatrix(ctx->get_engine(), alpha_lo, alpha_hi, beta_lo, beta_hi));
    });
}

int qfrob_tables_cvalues(qfrob_ctx* ctx, int alpha, long max_index, qfrob_report** out) {
    if (int rc = require(ctx != nullptr && out != nullptr, "qfrob_tables_cvalues: null argument"))
        return rc;
    *out = nullptr;
    return guarded([&] {
        *out = wrap_report(qfrob::run_tables_cvalues(ctx->get_engine(), alpha, max_index));
    });
}

const char* qfrob_report_json(const qfrob_report* rep) {
    return rep == nullptr ? "" : rep->json.c_str();
}

const char* qfrob_report_text(const qfrob_report* rep) {
    return rep == nullptr ? "" : rep->text.c_str();
}

int qfrob_report_ok(const qfrob_report* rep) { return rep != nullptr && rep->ok ? 1 : 0; }

void qfrob_report_destroy(qfrob_report* rep) { delete rep; }

const char* qfrob_version(void) { return "1.0.0"; }

} // extern "C"
