#pragma once

#include <stdexcept>
#include <string>

namespace qfrob {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Context construction rejects p = 2 and non-primes; the quintic Frobenius
// operations additionally reject p = 5 (the construction's standing
// assumption), while the series and L-function layers accept it.
struct bad_prime_error : error {
    using error::error;
};

struct bad_argument_error : error {
    using error::error;
};

struct division_by_zero_error : error {
    using error::error;
};

struct not_coprime_error : error {
    using error::error;
};

// A value does not carry enough known digits for the requested operation.
struct precision_exhausted_error : error {
    using error::error;
};

// series_sum hit the hard term cap before its stopping criteria held.
struct truncation_cap_error : error {
    using error::error;
};

// Two evaluation routes that must coincide (to working precision) disagreed.
struct identity_violated_error : error {
    using error::error;
};

// Specifically: the bracket reduction F(gamma) vs (-1)^(gamma+1) L_{gamma-1}.
struct reduction_identity_error : identity_violated_error {
    using identity_violated_error::identity_violated_error;
};

// The L-function outer sum failed its valuation sanity check (p >= 5 only).
struct inner_sum_valuation_error : error {
    using error::error;
};

struct singular_system_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

} // namespace qfrob
