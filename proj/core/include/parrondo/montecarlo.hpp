#pragma once

#include <cstdint>
#include <vector>

#include "parrondo/matrix.hpp"
#include "parrondo/params.hpp"
#include "parrondo/state.hpp"

namespace parrondo {

// A turn-by-turn simulation run. burn_in = kAutoBurnIn picks
// min(10^6, 1000 n^2), roughly the chains' mixing budget. Identical configs
// give bitwise-identical results.
inline constexpr std::uint64_t kAutoBurnIn = ~std::uint64_t{0};

struct sim_config {
    game_params params;
    game_tag game = game_tag::B;  // A, B, A', C, C'
    std::uint64_t turns = 1'000'000;
    std::uint64_t burn_in = kAutoBurnIn;
    std::uint64_t seed = 1;
    std::uint64_t stream = 0;
    state_t initial_state = 0;  // all players losers
};

struct sim_result {
    double mean_profit = 0.0;
    double std_error = 0.0;
    std::uint64_t total_turns = 0;  // turns counted after burn-in
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

// Play the chosen game on the full configuration space with explicit
// payoffs: coin-game turns pay +-1 to the ensemble, transfer turns pay 0.
// mean_profit averages payoffs after burn-in; std_error comes from batch
// means over 100 batches.
sim_result simulate(const sim_config& cfg);

// Simulate the tridiagonal win-count chain instead, drawing among the
// payoff categories of the reduced chain. Estimates the count-chain
// approximation (what mu_li computes), not the exact mean. Games B and C'.
sim_result simulate_reduced_li(const sim_config& cfg);

// What happened in one turn, for payoff-bookkeeping audits.
struct turn_record {
    game_tag played = game_tag::B;  // B (or A) coin turn vs A' transfer turn
    int player = 0;
    state_t before = 0;
    state_t after = 0;
    int payoff = 0;
};

// simulate() with every turn recorded (no burn-in); intended for short audit
// runs that recompute payoffs from the state trajectory.
sim_result simulate_trace(const sim_config& cfg, std::vector<turn_record>& trace);

}  // namespace parrondo
