#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "parrondo/matrix.hpp"
#include "parrondo/state.hpp"

namespace parrondo {

// One violation of the aggregation condition: two states of class c whose
// rows put different total mass on target class d.
struct lumpability_violation {
    int source_class = 0;
    state_t x = 0;
    state_t x_alt = 0;
    int target_class = 0;
    double mass_x = 0.0;
    double mass_x_alt = 0.0;

    double discrepancy() const {
        double d = mass_x - mass_x_alt;
        return d < 0 ? -d : d;
    }
};

// Verdict of the exhaustive aggregation check. When not lumpable, witness is
// the violation of maximum discrepancy (ties broken by row-major class
// order) and violations lists every offending (class, state pair, target)
// found, in row-major order.
struct lumpability_report {
    bool lumpable = true;
    double max_discrepancy = 0.0;
    std::optional<lumpability_violation> witness;
    std::vector<lumpability_violation> violations;
};

struct not_lumpable_error : std::runtime_error {
    lumpability_report report;
    explicit not_lumpable_error(lumpability_report r);
};

// Exhaustive check of the aggregation condition: for every class pair (c,d),
// all rows x in c must put the same total mass on d. Compares against the
// class representative's aggregate. In floating-point mode entries within
// tol pass; in exact-rational mode equality must be exact and tol is
// ignored.
template <class S>
lumpability_report check_lumpable(const basic_stoch_matrix<S>& P, const state_partition& part,
                                  double tol = 1e-12);

// Sufficient condition via symmetry: true iff P(x,y) = P(x_sigma, y_sigma)
// for every state pair and every permutation in gens. When gens generate a
// group whose orbits give the partition, this implies lumpability.
template <class S>
bool check_symmetry_condition(const basic_stoch_matrix<S>& P,
                              const std::vector<std::vector<int>>& gens, double tol = 1e-12);

}  // namespace parrondo
