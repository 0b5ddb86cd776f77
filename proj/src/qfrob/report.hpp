#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qfrob/cohomology.hpp"
#include "qfrob/lfunction.hpp"

namespace qfrob {

// Serialized snapshot of a p-adic value: plain data, so reports stay valid
// after their engine is gone.
struct ValueSnapshot {
    std::string name;
    std::string kind;      // "value" | "exact_zero" | "inexact_zero"
    long valuation = 0;    // valuation (value) or certified bound (inexact zero)
    std::string unit;      // decimal unit mod p^unit_digits; empty for zero kinds
    long unit_digits = 0;  // relative digits the unit is reduced to
    std::string digits;    // human-readable digit expansion
};

struct CheckResult {
    std::string name;
    bool pass = false;
    long digits = 0; // measured agreement digits or certified zero bound;
                     // kValInf means the check is exact
    std::string detail;
};

// One command's full result. to_json() is the canonical machine format and is
// byte-deterministic for a fixed configuration (no timing data); to_text() is
// the human projection and appends the wall time.
struct Report {
    std::string command;
    long prime = 0;
    int digits = 0;
    int margin = 0;
    long truncation_cap = 0;
    std::string mode_key;   // "convention" | "suite" | "table"
    std::string mode_value;

    std::vector<ValueSnapshot> values;
    std::vector<std::vector<ValueSnapshot>> matrix; // 4x4 when command = frobenius
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, long>> n_max; // series lengths, sorted by name
    std::vector<std::string> table_lines;            // tables payload
    double wall_seconds = 0.0;

    bool ok() const;
    std::string to_json() const;
    std::string to_text() const;
};

ValueSnapshot snapshot_value(const std::string& name, const PadicScalar& x);

// Frobenius matrix report: the 4x4 matrix in the requested convention,
// Delta_3, and the structural checks.
Report run_frobenius(Engine& eng, Convention convention);

// Identity-check suites; suite is one of all|dwork|brackets|cohomology|lfunction.
Report run_verify(Engine& eng, const std::string& suite);

// Exact-table dumps.
Report run_tables_dwork(Engine& eng, long n_max);
Report run_tables_dmatrix(Engine& eng, int alpha_lo, int alpha_hi, long beta_lo, long beta_hi);
Report run_tables_cvalues(Engine& eng, int alpha, long max_index);

} // namespace qfrob
