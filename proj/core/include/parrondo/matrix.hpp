#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "parrondo/params.hpp"
#include "parrondo/state.hpp"

namespace parrondo {

// A: fair-coin game with +-1 payoffs. B: the spatial coin game. A': the
// unit-transfer game (ensemble payoff always 0). C / C': gamma-mixtures of
// A / A' with B. other: anything assembled ad hoc, which the payoff-signing
// machinery refuses to guess about.
enum class game_tag { A, B, Aprime, C, Cprime, other };

// full: indexed by all 2^n configurations. lumped: quotient over a partition
// the chain is lumpable for. averaged: row-averaged pseudo-quotient, defined
// for any partition but only an approximation when lumpability fails.
// li_chain: the tridiagonal win-count chain built directly from closed-form
// entries.
enum class chain_kind { full, lumped, averaged, li_chain };

std::string to_string(game_tag g);
std::string to_string(chain_kind k);

// Row-stochastic matrix in sparse row form, tagged with enough provenance
// (game, construction kind, parameters, partition) for dotted() to attach
// payoff signs without re-deriving them from numeric entries.
template <class S>
struct basic_stoch_matrix {
    game_tag game = game_tag::other;
    chain_kind kind = chain_kind::full;
    basic_game_params<S> params{};
    std::shared_ptr<const state_partition> partition;  // set for lumped/averaged

    int dim = 0;
    // Each row holds (column, probability) pairs sorted by column; zero
    // entries are omitted.
    std::vector<std::vector<std::pair<int, S>>> rows;

    S entry(int r, int c) const {
        for (const auto& [col, v] : rows[r])
            if (col == c) return v;
        return S(0);
    }
    S row_sum(int r) const {
        S s(0);
        for (const auto& [col, v] : rows[r]) s += v;
        return s;
    }
};

// Payoff-signed companion of a stochastic matrix: winning probability mass
// keeps its sign, losing mass is negated, zero-payoff mass drops out. The
// product pi * Pdot * 1 is then the equilibrium mean profit per turn.
template <class S>
struct basic_signed_matrix {
    int dim = 0;
    std::vector<std::vector<std::pair<int, S>>> rows;

    S row_sum(int r) const {
        S s(0);
        for (const auto& [col, v] : rows[r]) s += v;
        return s;
    }
};

// Tridiagonal chain on the win counts {0,...,n}, stored as per-category
// probabilities so payoff signs survive aggregation. The coin-game part
// carries +-1 payoffs (win categories +1, lose categories -1); the transfer
// part pays 0. up/down/stay give the plain transition probabilities.
template <class S>
struct basic_tri_chain {
    int n = 0;
    game_tag game = game_tag::other;
    basic_game_params<S> params{};

    std::vector<S> up_win;     // i -> i+1, a loser wins
    std::vector<S> down_lose;  // i -> i-1, a winner loses
    std::vector<S> stay_win;   // i -> i, a winner wins again
    std::vector<S> stay_lose;  // i -> i, a loser loses again
    std::vector<S> up_free;    // i -> i+1 by unit transfer
    std::vector<S> down_free;  // i -> i-1 by unit transfer
    std::vector<S> stay_free;  // i -> i by unit transfer

    int dim() const { return n + 1; }
    S up(int i) const { return up_win[i] + up_free[i]; }
    S down(int i) const { return down_lose[i] + down_free[i]; }
    S stay(int i) const { return stay_win[i] + stay_lose[i] + stay_free[i]; }
};

using stoch_matrix = basic_stoch_matrix<double>;
using signed_matrix = basic_signed_matrix<double>;
using tri_chain = basic_tri_chain<double>;

}  // namespace parrondo
