#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "qfrob/brackets.hpp"
#include "qfrob/dwork.hpp"

namespace qfrob {

// One prime's computation state: context, truncation policy, coefficient and
// combinatorics tables, and memoized bracket values. Not thread-safe; use one
// Engine per thread (independent primes parallelize naturally).
class Engine {
  public:
    Engine(long p, int digits, int margin, long truncation_cap = 5000,
           std::optional<std::string> cache_dir = std::nullopt)
        : ctx_(std::make_unique<Context>(p, digits, margin)),
          policy_{ctx_->working(), 10, truncation_cap},
          dwork_(p, std::move(cache_dir)) {}

    const Context& ctx() const { return *ctx_; }
    const TruncationPolicy& policy() const { return policy_; }
    DworkCoefficients& dwork() { return dwork_; }
    DTable& dtable() { return dtab_; }
    HarmonicTable& harmonic() { return harm_; }

    const BracketValue& L(int gamma) {
        auto it = lmemo_.find(gamma);
        if (it == lmemo_.end()) {
            BracketValue v = bracket_L(gamma, dwork_, dtab_, *ctx_, policy_);
            note_n_max("L" + std::to_string(gamma), v.n_max_used);
            it = lmemo_.emplace(gamma, std::move(v)).first;
        }
        return it->second;
    }

    // contract-checked; f_agreement(gamma) afterwards reports the digits
    const BracketValue& F(int gamma) {
        auto it = fmemo_.find(gamma);
        if (it == fmemo_.end()) {
            long agreement = 0;
            BracketValue v = bracket_F(gamma, dwork_, dtab_, *ctx_, policy_, &agreement);
            f_agreement_[gamma] = agreement;
            note_n_max("F" + std::to_string(gamma), v.n_max_used);
            it = fmemo_.emplace(gamma, std::move(v)).first;
        }
        return it->second;
    }

    long f_agreement(int gamma) {
        F(gamma);
        return f_agreement_.at(gamma);
    }

    PadicScalar delta(int s) {
        if (s < 1) throw bad_argument_error("delta: s must be >= 1");
        PadicScalar top = L(s - 1).value;
        PadicScalar base = L(0).value;
        ZZ fact;
        mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(s));
        PadicScalar inv_fact = PadicScalar::from_rational(QQ(ZZ(1), fact), *ctx_);
        return top.sub(base.pow_ui(static_cast<unsigned long>(s)).mul(inv_fact));
    }

    void note_n_max(const std::string& name, long n) { n_max_log_[name] = n; }
    const std::map<std::string, long>& n_max_log() const { return n_max_log_; }

  private:
    std::unique_ptr<Context> ctx_; // pinned address: scalars hold pointers into it
    TruncationPolicy policy_;
    DworkCoefficients dwork_;
    DTable dtab_;
    HarmonicTable harm_;
    std::map<int, BracketValue> lmemo_;
    std::map<int, BracketValue> fmemo_;
    std::map<int, long> f_agreement_;
    std::map<std::string, long> n_max_log_;
};

} // namespace qfrob
