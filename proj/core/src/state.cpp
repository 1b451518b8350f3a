#include "parrondo/state.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace parrondo {

state_t reverse_bits(state_t x, int n) {
    state_t r = 0;
    for (int k = 0; k < n; ++k) {
        r = (r << 1) | (x & 1u);
        x >>= 1;
    }
    return r;
}

state_t apply_permutation(state_t x, int n, const std::vector<int>& sigma) {
    if (int(sigma.size()) != n) throw std::invalid_argument("permutation size mismatch");
    state_t y = 0;
    for (int j = 1; j <= n; ++j) {
        int img = sigma[j - 1];
        if (img < 1 || img > n) throw std::invalid_argument("permutation image out of range");
        y = with_bit(y, n, j, bit_of(x, n, img));
    }
    return y;
}

std::vector<int> rotation_permutation(int n) {
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 2);
    sigma[n - 1] = 1;
    return sigma;
}

std::vector<int> reversal_permutation(int n) {
    std::vector<int> sigma(n);
    for (int j = 0; j < n; ++j) sigma[j] = n - j;
    return sigma;
}

std::vector<std::vector<int>> dihedral_group(int n) {
    std::vector<std::vector<int>> elems;
    elems.reserve(2 * n);
    std::vector<int> rot(n);
    std::iota(rot.begin(), rot.end(), 1);
    const auto step = rotation_permutation(n);
    for (int k = 0; k < n; ++k) {
        elems.push_back(rot);
        std::vector<int> next(n);
        for (int j = 0; j < n; ++j) next[j] = rot[step[j] - 1];
        rot = std::move(next);
    }
    const auto rev = reversal_permutation(n);
    for (int k = 0; k < n; ++k) {
        std::vector<int> refl(n);
        for (int j = 0; j < n; ++j) refl[j] = elems[k][rev[j] - 1];
        elems.push_back(std::move(refl));
    }
    return elems;
}

namespace {

void check_player_count(int n) {
    if (n < 3 || n > 20) throw std::invalid_argument("player count must be in [3, 20]");
}

state_partition finish(int n, std::vector<int> class_of, std::vector<state_t> reps) {
    state_partition part;
    part.n = n;
    part.class_of = std::move(class_of);
    part.representatives = std::move(reps);
    part.members.resize(part.representatives.size());
    for (state_t x = 0; x < (state_t{1} << n); ++x)
        part.members[part.class_of[x]].push_back(x);
    return part;
}

}  // namespace

state_partition dihedral_partition(int n) {
    check_player_count(n);
    const state_t total = state_t{1} << n;
    std::vector<int> class_of(total, -1);
    std::vector<state_t> reps;
    // Walking states in increasing order and claiming whole orbits at once
    // makes the smallest orbit member the representative for free.
    for (state_t x = 0; x < total; ++x) {
        if (class_of[x] >= 0) continue;
        const int c = int(reps.size());
        reps.push_back(x);
        state_t r = x;
        for (int k = 0; k < n; ++k) {
            class_of[r] = c;
            class_of[reverse_bits(r, n)] = c;
            r = rotate_left(r, n);
        }
    }
    return finish(n, std::move(class_of), std::move(reps));
}

state_partition count_partition(int n) {
    if (n < 3) throw std::invalid_argument("need at least 3 players");
    check_player_count(n);
    const state_t total = state_t{1} << n;
    std::vector<int> class_of(total);
    for (state_t x = 0; x < total; ++x) class_of[x] = popcount_state(x);
    std::vector<state_t> reps(n + 1);
    for (int k = 0; k <= n; ++k) reps[k] = state_mask(k);
    return finish(n, std::move(class_of), std::move(reps));
}

state_partition singleton_partition(int n) {
    check_player_count(n);
    const state_t total = state_t{1} << n;
    std::vector<int> class_of(total);
    std::vector<state_t> reps(total);
    for (state_t x = 0; x < total; ++x) {
        class_of[x] = int(x);
        reps[x] = x;
    }
    return finish(n, std::move(class_of), std::move(reps));
}

}  // namespace parrondo
