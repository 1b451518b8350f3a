#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "parrondo/matrix.hpp"
#include "parrondo/params.hpp"

namespace parrondo {

// The chain has more than one closed communicating class, so no unique
// stationary distribution exists (e.g. both all-losers and all-winners
// absorbing at certain boundary parameters).
struct multiple_recurrent_classes_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The elimination produced a distribution whose residual exceeds the
// stationarity threshold, or hit a structurally impossible pivot.
struct numerical_failure_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

template <class S>
struct basic_stationary_result {
    std::vector<S> pi;        // zero on transient states, sums to 1
    std::vector<int> support; // indices of the unique recurrent class, ascending
    double residual = 0.0;    // max |(pi P - pi)(j)| over the full index set
};

using stationary_result = basic_stationary_result<double>;

// Stationary distribution of a row-stochastic matrix: finds the unique
// closed communicating class (Tarjan on the positive-entry graph), solves
// pi P = pi on it by GTH state reduction (no subtractions, so componentwise
// accurate), pads zeros elsewhere. Throws multiple_recurrent_classes_error
// or numerical_failure_error.
template <class S>
basic_stationary_result<S> stationary(const basic_stoch_matrix<S>& P,
                                      double residual_threshold = 1e-10);

// Same contract for tridiagonal chains in O(n): locates the unique closed
// interval of communicating states and applies the detailed-balance
// recursion pi(i+1) = pi(i) * up(i) / down(i+1). In floating point the
// recursion runs in log space so win counts in the thousands cannot
// overflow.
template <class S>
basic_stationary_result<S> stationary_birth_death(const basic_tri_chain<S>& T);

// Mean profit per turn mu = pi Pdot 1.
template <class S>
S mean_profit(const basic_stationary_result<S>& st, const basic_signed_matrix<S>& Pdot);

// How a profit value was obtained.
enum class solve_method { full, dihedral, li, closed_form };
std::string to_string(solve_method m);

struct profit_report {
    game_params params;
    game_tag game = game_tag::B;
    solve_method method = solve_method::full;
    double mu = 0.0;
    double residual = 0.0;
    int dim = 0;
};

// Equilibrium mean profit of game B, C or C' (A and A' are accepted and give
// 0). method full solves the 2^n chain directly (n <= 14); method dihedral
// solves the quotient over rotation/reflection orbits (n <= 19).
profit_report mu_exact(const game_params& params, game_tag game, solve_method method);

// Count-chain approximation via the tridiagonal builders and the
// birth-death solve; supports n in the thousands. Games B and C'.
profit_report mu_li(const game_params& params, game_tag game);

// Scalar-generic cores of the two computations, for exact-rational runs.
template <class S>
S mu_exact_value(const basic_game_params<S>& params, game_tag game, solve_method method,
                 double* residual = nullptr, int* dim = nullptr);
template <class S>
S mu_li_value(const basic_game_params<S>& params, game_tag game);

// The four closed-form profit functions at n = 4 (the C' forms assume
// gamma = 1/2): exact and count-approximated values for B and C', as
// explicit rational functions of (p0, p1, p2).
enum class closed_form_kind { B_exact, B_approx, Cprime_exact, Cprime_approx };

template <class S>
S mu_closed_form_N4(const basic_game_params<S>& params, closed_form_kind which);

}  // namespace parrondo
