#pragma once

#include <stdexcept>
#include <string>

namespace parrondo {

// Shared limits. Full-size chains have 2^n states, so the explicit-matrix
// paths keep n small; the profile-based paths accept any n >= 3.
inline constexpr int kMinPlayers = 3;
inline constexpr int kMaxFullChainPlayers = 14;
inline constexpr int kMaxCanonicalChainPlayers = 19;

// Parameters of game B with n players arranged in a circle. The selected
// player wins with probability p[m] where m counts winners among their two
// neighbours. gamma is the mixing weight of the fair game in C = gamma*A +
// (1-gamma)*B and C' = gamma*A' + (1-gamma)*B; it is ignored by pure-B
// quantities.
template <class S>
struct basic_game_params {
    int n = 0;
    S p0{};
    S p1{};
    S p2{};
    S gamma{};

    S p(int winners) const {
        switch (winners) {
            case 0: return p0;
            case 1: return p1;
            case 2: return p2;
        }
        throw std::invalid_argument("winner count must be 0, 1 or 2");
    }
    S q(int winners) const { return S(1) - p(winners); }
};

using game_params = basic_game_params<double>;

// Throws std::invalid_argument on out-of-range inputs. min_players /
// max_players let callers tighten the player range to what their chain
// representation can afford.
template <class S>
void validate(const basic_game_params<S>& gp, int min_players = kMinPlayers,
              int max_players = -1) {
    if (gp.n < min_players)
        throw std::invalid_argument("need at least " + std::to_string(min_players) +
                                    " players, got " + std::to_string(gp.n));
    if (max_players > 0 && gp.n > max_players)
        throw std::invalid_argument("at most " + std::to_string(max_players) +
                                    " players supported here, got " + std::to_string(gp.n));
    auto in_unit = [](const S& v) { return v >= S(0) && v <= S(1); };
    if (!in_unit(gp.p0) || !in_unit(gp.p1) || !in_unit(gp.p2))
        throw std::invalid_argument("win probabilities must lie in [0,1]");
    if (!in_unit(gp.gamma))
        throw std::invalid_argument("gamma must lie in [0,1]");
}

}  // namespace parrondo
