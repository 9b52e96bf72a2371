#pragma once

#include <stdexcept>
#include <string>

namespace qdirac {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Two numeric scalars evaluated at different q0 met in one expression.
struct mode_mismatch_error : error {
    using error::error;
};

// Sum of two formal square roots with distinct radicands; the scalar
// domain is a single quadratic extension of Q(q^{1/2}) by design.
struct incompatible_radical_error : error {
    using error::error;
};

// Evaluation of a reduced rational function at a zero of its denominator.
struct pole_error : error {
    using error::error;
};

// An intertwiner space between irreducibles had dimension > 1.
struct schur_error : error {
    using error::error;
};

// A critical pair of the Clifford rewrite system failed to resolve.
struct confluence_error : error {
    using error::error;
};

} // namespace qdirac
