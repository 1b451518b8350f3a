#pragma once

#include <cstdint>
#include <vector>

namespace parrondo {

// A configuration of n players on a circle is a word x_1 ... x_n of bits
// (1 = winner, 0 = loser), packed into an integer with x_1 as the most
// significant of the n low bits: code = sum_i x_i * 2^(n-i). Player indices
// are 1-based in the maths and stay 1-based in this API.
using state_t = std::uint32_t;

inline state_t state_mask(int n) { return (state_t{1} << n) - 1; }
inline int bit_of(state_t x, int n, int i) { return int((x >> (n - i)) & 1u); }
inline state_t with_bit(state_t x, int n, int i, int v) {
    state_t sel = state_t{1} << (n - i);
    return v ? (x | sel) : (x & ~sel);
}

// Circular neighbour of player i at offset d (usually +1 or -1).
inline int neighbour(int n, int i, int d) {
    int j = (i - 1 + d) % n;
    if (j < 0) j += n;
    return j + 1;
}

// Number of winners among the two nearest neighbours of player i (0, 1, 2).
inline int neighbour_winners(state_t x, int n, int i) {
    return bit_of(x, n, neighbour(n, i, -1)) + bit_of(x, n, neighbour(n, i, +1));
}

inline int popcount_state(state_t x) { return __builtin_popcount(x); }

// x with component i complemented.
inline state_t flip(state_t x, int n, int i) { return x ^ (state_t{1} << (n - i)); }

// One step of the unit-transfer game: player i hands their unit to the
// neighbour at offset dir. Component i drops to 0 and the neighbour's
// component rises to 1 (it may already be 1).
inline state_t transfer(state_t x, int n, int i, int dir) {
    return with_bit(with_bit(x, n, i, 0), n, neighbour(n, i, dir), 1);
}

// Left cyclic shift of the word: the configuration seen after rotating the
// circle by one seat, i.e. x permuted by (2,3,...,n,1).
inline state_t rotate_left(state_t x, int n) {
    return ((x << 1) | (x >> (n - 1))) & state_mask(n);
}

// Reversal of the n-bit word (the reflection of the circle).
state_t reverse_bits(state_t x, int n);

// y = x permuted by sigma: component j of y is component sigma(j) of x,
// with sigma given as a 1-based image table of size n.
state_t apply_permutation(state_t x, int n, const std::vector<int>& sigma);

// The single rotation (2,3,...,n,1) as an image table.
std::vector<int> rotation_permutation(int n);
// The reversal (n,n-1,...,1).
std::vector<int> reversal_permutation(int n);
// All 2n elements of the dihedral group: n rotations then n reflected
// rotations. Generated by the two permutations above.
std::vector<std::vector<int>> dihedral_group(int n);

// Partition of all 2^n configurations into classes. class_of[x] is the class
// index of configuration x, representatives[c] its canonical member, and
// members[c] the full class listing.
struct state_partition {
    int n = 0;
    std::vector<int> class_of;
    std::vector<state_t> representatives;
    std::vector<std::vector<state_t>> members;

    int num_classes() const { return int(representatives.size()); }
    int size_of(int c) const { return int(members[c].size()); }
};

// Orbits under the dihedral group (rotations and reflections of the circle).
// Representative = numerically smallest orbit member, which is also the
// lexicographically smallest bit string. Classes are ordered by
// representative.
state_partition dihedral_partition(int n);

// Classes gathering configurations with the same number of winners; class k
// holds the states of popcount k. Coarser than the dihedral partition and
// generally not compatible with the dynamics.
state_partition count_partition(int n);

// Trivial partition with every state its own class, for identity checks.
state_partition singleton_partition(int n);

}  // namespace parrondo
