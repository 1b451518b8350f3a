#include "parrondo/lumpability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "parrondo/rational.hpp"

namespace parrondo {

namespace {

std::string describe(const lumpability_report& r) {
    if (r.lumpable) return "lumpable";
    std::ostringstream os;
    const auto& w = *r.witness;
    os << "lumpability violated: class " << w.source_class << ", states " << w.x << " and "
       << w.x_alt << " aggregate " << w.mass_x << " vs " << w.mass_x_alt << " into class "
       << w.target_class << " (" << r.violations.size() << " violations, max discrepancy "
       << r.max_discrepancy << ")";
    return os.str();
}

// Aggregate one sparse state row into (class, mass) pairs sorted by class.
template <class S>
std::vector<std::pair<int, S>> aggregate_row(const std::vector<std::pair<int, S>>& row,
                                             const state_partition& part) {
    std::vector<std::pair<int, S>> out;
    out.reserve(row.size());
    for (const auto& [y, v] : row) out.emplace_back(part.class_of[y], v);
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::size_t w = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (w > 0 && out[w - 1].first == out[i].first)
            out[w - 1].second += out[i].second;
        else
            out[w++] = out[i];
    }
    out.resize(w);
    return out;
}

template <class S>
bool differs(const S& a, const S& b, double tol) {
    if constexpr (std::is_same_v<S, rational>) {
        (void)tol;  // exact mode admits no tolerance
        return a != b;
    } else {
        return std::abs(a - b) > tol;
    }
}

// Walk two class-sorted aggregate rows in lockstep, calling fn(class, a, b)
// for every class present in either (absent = 0).
template <class S, class F>
void union_walk(const std::vector<std::pair<int, S>>& ra, const std::vector<std::pair<int, S>>& rb,
                F&& fn) {
    std::size_t ia = 0, ib = 0;
    while (ia < ra.size() || ib < rb.size()) {
        int ca = ia < ra.size() ? ra[ia].first : INT32_MAX;
        int cb = ib < rb.size() ? rb[ib].first : INT32_MAX;
        if (ca == cb) {
            fn(ca, ra[ia].second, rb[ib].second);
            ++ia, ++ib;
        } else if (ca < cb) {
            fn(ca, ra[ia].second, S(0));
            ++ia;
        } else {
            fn(cb, S(0), rb[ib].second);
            ++ib;
        }
    }
}

}  // namespace

not_lumpable_error::not_lumpable_error(lumpability_report r)
    : std::runtime_error(describe(r)), report(std::move(r)) {}

template <class S>
lumpability_report check_lumpable(const basic_stoch_matrix<S>& P, const state_partition& part,
                                  double tol) {
    if (P.dim != (1 << part.n))
        throw std::invalid_argument("matrix dimension does not match the partition's state set");

    lumpability_report rep;
    for (int c = 0; c < part.num_classes(); ++c) {
        const state_t ref_state = part.representatives[c];
        const auto ref = aggregate_row(P.rows[ref_state], part);
        for (state_t x : part.members[c]) {
            if (x == ref_state) continue;
            const auto agg = aggregate_row(P.rows[x], part);
            union_walk(ref, agg, [&](int d, const S& a, const S& b) {
                if (!differs(a, b, tol)) return;
                lumpability_violation v;
                v.source_class = c;
                v.x = ref_state;
                v.x_alt = x;
                v.target_class = d;
                v.mass_x = to_double(a);
                v.mass_x_alt = to_double(b);
                if (v.discrepancy() > rep.max_discrepancy) {
                    rep.max_discrepancy = v.discrepancy();
                    rep.witness = v;
                }
                rep.violations.push_back(std::move(v));
            });
        }
    }
    rep.lumpable = rep.violations.empty();
    return rep;
}

template <class S>
bool check_symmetry_condition(const basic_stoch_matrix<S>& P,
                              const std::vector<std::vector<int>>& gens, double tol) {
    // Infer the player count from the dimension (full chains only).
    int n = 0;
    while ((1 << n) < P.dim) ++n;
    if ((1 << n) != P.dim)
        throw std::invalid_argument("symmetry check requires a full configuration chain");

    std::vector<std::pair<int, S>> mapped;
    for (const auto& sigma : gens) {
        for (state_t x = 0; x < state_t(P.dim); ++x) {
            const state_t xs = apply_permutation(x, n, sigma);
            mapped.clear();
            for (const auto& [y, v] : P.rows[x])
                mapped.emplace_back(int(apply_permutation(state_t(y), n, sigma)), v);
            std::sort(mapped.begin(), mapped.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            bool ok = true;
            union_walk(mapped, P.rows[xs], [&](int, const S& a, const S& b) {
                if (differs(a, b, tol)) ok = false;
            });
            if (!ok) return false;
        }
    }
    return true;
}

template lumpability_report check_lumpable<double>(const basic_stoch_matrix<double>&,
                                                   const state_partition&, double);
template lumpability_report check_lumpable<rational>(const basic_stoch_matrix<rational>&,
                                                     const state_partition&, double);
template bool check_symmetry_condition<double>(const basic_stoch_matrix<double>&,
                                               const std::vector<std::vector<int>>&, double);
template bool check_symmetry_condition<rational>(const basic_stoch_matrix<rational>&,
                                                 const std::vector<std::vector<int>>&, double);

}  // namespace parrondo
