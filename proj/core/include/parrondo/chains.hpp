#pragma once

#include <memory>

#include "parrondo/matrix.hpp"
#include "parrondo/params.hpp"
#include "parrondo/state.hpp"

namespace parrondo {

// Full 2^n-state chain of game B. Off-diagonal entries: picking player i
// (probability 1/n) flips their status, with probability p_m if they were a
// loser and q_m if a winner, m = winners among their two neighbours. The
// diagonal collects the complementary no-change outcomes.
template <class S>
basic_stoch_matrix<S> build_full_B(basic_game_params<S> params);

// Game A as the fair-coin special case of B, kept as its own tag because its
// payoffs are +-1 (unlike A').
template <class S>
basic_stoch_matrix<S> build_full_A(int n);

// Full chain of the unit-transfer game A': a uniformly chosen player passes
// one unit to a uniformly chosen nearest neighbour. Parameter-free.
template <class S>
basic_stoch_matrix<S> build_full_Aprime(int n);

// Entrywise convex combination gamma*PA + (1-gamma)*PB. Tags the result C or
// C' when PA is game A or A' and PB is game B; anything else is 'other'.
template <class S>
basic_stoch_matrix<S> mix(const basic_stoch_matrix<S>& PA, const basic_stoch_matrix<S>& PB,
                          S gamma);

// Quotient chain over the classes of part, using each class representative's
// row. By default verifies the lumpability condition exhaustively first and
// throws not_lumpable_error (with a witness) on violation; pass verify=false
// only when the caller has already checked.
template <class S>
basic_stoch_matrix<S> reduce_lumped(const basic_stoch_matrix<S>& P,
                                    std::shared_ptr<const state_partition> part,
                                    bool verify = true, double tol = 1e-12);

// Row-averaged pseudo-quotient: class-to-class mass averaged over the source
// class. Defined for every partition; coincides with reduce_lumped exactly
// when P is lumpable for part.
template <class S>
basic_stoch_matrix<S> reduce_averaged(const basic_stoch_matrix<S>& P,
                                      std::shared_ptr<const state_partition> part);

// Tridiagonal win-count chains with closed-form binomial-ratio entries,
// valid for any n >= 3 without touching the 2^n state space. They coincide
// with reduce_averaged of the full chains over the count partition.
template <class S>
basic_tri_chain<S> build_li_B(basic_game_params<S> params);

template <class S>
basic_tri_chain<S> build_li_Aprime(int n);

// gamma-mixture of two tridiagonal chains on the same index set, preserving
// the payoff categories of both parts.
template <class S>
basic_tri_chain<S> mix_li(const basic_tri_chain<S>& A, const basic_tri_chain<S>& B, S gamma);

// Convenience: the count chain of game C' (gamma*A' + (1-gamma)*B).
template <class S>
basic_tri_chain<S> build_li_Cprime(basic_game_params<S> params);

// View of a tridiagonal chain as an ordinary sparse stochastic matrix, for
// entrywise comparison against reductions of the full chain.
template <class S>
basic_stoch_matrix<S> to_matrix(const basic_tri_chain<S>& T);

// Payoff-signed companion ("dotted" matrix): losing mass negated, winning
// mass kept, transfer mass dropped. Works for every construction this
// library produces, using the matrix's provenance tags; throws
// std::invalid_argument for game_tag::other.
template <class S>
basic_signed_matrix<S> dotted(const basic_stoch_matrix<S>& P);

template <class S>
basic_signed_matrix<S> dotted(const basic_tri_chain<S>& T);

// Plain-text triplet dump, one "row col value" line per stored entry with 17
// significant digits; used by golden tests and the CLI.
template <class S>
void dump_triplets(const basic_stoch_matrix<S>& P, std::ostream& out);

}  // namespace parrondo
