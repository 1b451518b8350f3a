#pragma once

#include <vector>

namespace parrondo {

// State-reduction elimination for stationary distributions of irreducible
// row-stochastic matrices, in place on a dense row-major dim x dim buffer
// (which is destroyed). The scheme replaces each pivot by the off-diagonal
// row sum, so no subtraction ever happens and every component of the result
// is computed to high relative accuracy. Throws numerical_failure_error on a
// zero pivot (a non-irreducible input).

// Cache-blocked variant for doubles: per-panel eager updates keep the panel
// current while the bulk of the trailing update is deferred to one matrix
// product per panel.
std::vector<double> gth_dense(std::vector<double>& A, int dim);

// Straightforward right-looking variant for any scalar, used in exact
// arithmetic and as a reference implementation.
template <class S>
std::vector<S> gth_dense_generic(std::vector<S>& A, int dim);

}  // namespace parrondo
