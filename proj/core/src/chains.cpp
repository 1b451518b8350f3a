#include "parrondo/chains.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <type_traits>

#include "parrondo/lumpability.hpp"
#include "parrondo/rational.hpp"

namespace parrondo {

std::string to_string(game_tag g) {
    switch (g) {
        case game_tag::A: return "A";
        case game_tag::B: return "B";
        case game_tag::Aprime: return "A'";
        case game_tag::C: return "C";
        case game_tag::Cprime: return "C'";
        case game_tag::other: return "other";
    }
    return "?";
}

std::string to_string(chain_kind k) {
    switch (k) {
        case chain_kind::full: return "full";
        case chain_kind::lumped: return "lumped";
        case chain_kind::averaged: return "averaged";
        case chain_kind::li_chain: return "li";
    }
    return "?";
}

namespace {

// Probability mass toward one target state, split by ensemble payoff:
// win pays +1, lose pays -1, free pays 0.
template <class S>
struct weighted_target {
    state_t y;
    S win;
    S lose;
    S free;
};

template <class S>
using row_terms = std::vector<weighted_target<S>>;

// One coin-game turn from state x: player i is picked with probability 1/n
// and tosses the coin for m = winners among their neighbours. Winning flips
// a loser up (or keeps a winner up), losing the reverse. weight scales the
// whole contribution, letting mixtures reuse this.
template <class S>
void coin_game_terms(const basic_game_params<S>& gp, state_t x, const S& weight,
                     row_terms<S>& out) {
    const int n = gp.n;
    const S w = weight / S(n);
    for (int i = 1; i <= n; ++i) {
        const S pw = w * gp.p(neighbour_winners(x, n, i));
        const S pl = w - pw;
        if (bit_of(x, n, i) == 0) {
            out.push_back({flip(x, n, i), pw, S(0), S(0)});
            out.push_back({x, S(0), pl, S(0)});
        } else {
            out.push_back({x, pw, S(0), S(0)});
            out.push_back({flip(x, n, i), S(0), pl, S(0)});
        }
    }
}

// One transfer-game turn: player i picked uniformly, unit handed to the left
// or right neighbour with probability 1/2 each. No payoff to the ensemble.
template <class S>
void transfer_game_terms(int n, state_t x, const S& weight, row_terms<S>& out) {
    const S w = weight / S(2 * n);
    for (int i = 1; i <= n; ++i) {
        out.push_back({transfer(x, n, i, -1), S(0), S(0), w});
        out.push_back({transfer(x, n, i, +1), S(0), S(0), w});
    }
}

template <class S>
basic_game_params<S> fair_params(const basic_game_params<S>& gp) {
    basic_game_params<S> f = gp;
    f.p0 = f.p1 = f.p2 = S(1) / S(2);
    return f;
}

// The full row of the chosen game at state x, merged by target and sorted.
template <class S>
row_terms<S> game_row(game_tag g, const basic_game_params<S>& gp, state_t x) {
    row_terms<S> raw;
    switch (g) {
        case game_tag::B:
            coin_game_terms(gp, x, S(1), raw);
            break;
        case game_tag::A:
            coin_game_terms(fair_params(gp), x, S(1), raw);
            break;
        case game_tag::Aprime:
            transfer_game_terms(gp.n, x, S(1), raw);
            break;
        case game_tag::C:
            coin_game_terms(fair_params(gp), x, gp.gamma, raw);
            coin_game_terms(gp, x, S(1) - gp.gamma, raw);
            break;
        case game_tag::Cprime:
            transfer_game_terms(gp.n, x, gp.gamma, raw);
            coin_game_terms(gp, x, S(1) - gp.gamma, raw);
            break;
        case game_tag::other:
            throw std::invalid_argument("no construction rule for this matrix");
    }
    std::sort(raw.begin(), raw.end(),
              [](const auto& a, const auto& b) { return a.y < b.y; });
    row_terms<S> merged;
    merged.reserve(raw.size());
    for (auto& t : raw) {
        if (!merged.empty() && merged.back().y == t.y) {
            merged.back().win += t.win;
            merged.back().lose += t.lose;
            merged.back().free += t.free;
        } else {
            merged.push_back(std::move(t));
        }
    }
    return merged;
}

template <class S>
basic_stoch_matrix<S> assemble_full(game_tag g, const basic_game_params<S>& gp) {
    validate(gp, kMinPlayers, 20);
    basic_stoch_matrix<S> M;
    M.game = g;
    M.kind = chain_kind::full;
    M.params = gp;
    M.dim = 1 << gp.n;
    M.rows.resize(M.dim);
    for (state_t x = 0; x < state_t(M.dim); ++x) {
        auto terms = game_row(g, gp, x);
        auto& row = M.rows[x];
        row.reserve(terms.size());
        for (const auto& t : terms) {
            S total = t.win + t.lose + t.free;
            if (total != S(0)) row.emplace_back(int(t.y), std::move(total));
        }
    }
    return M;
}

// Scratch accumulator that aggregates sparse masses into partition classes
// without clearing a full-size buffer per row. Floating-point sums are
// Neumaier-compensated: the count classes of a mid-size chain have hundreds
// of members, and a plain running sum would drift by ~1e-14 there.
template <class S>
class class_accumulator {
  public:
    explicit class_accumulator(int num_classes) : buf_(num_classes, S(0)) {
        if constexpr (std::is_floating_point_v<S>) comp_.assign(buf_.size(), S(0));
    }

    void add(int cls, const S& v) {
        if (buf_[cls] == S(0)) touched_.push_back(cls);
        if constexpr (std::is_floating_point_v<S>) {
            const S sum = buf_[cls] + v;
            if (std::abs(buf_[cls]) >= std::abs(v))
                comp_[cls] += (buf_[cls] - sum) + v;
            else
                comp_[cls] += (v - sum) + buf_[cls];
            buf_[cls] = sum;
        } else {
            buf_[cls] += v;
        }
    }

    // Drains into (class, value) pairs sorted by class, skipping zeros.
    std::vector<std::pair<int, S>> take_sorted() {
        std::sort(touched_.begin(), touched_.end());
        std::vector<std::pair<int, S>> out;
        out.reserve(touched_.size());
        for (int c : touched_) {
            S total = buf_[c];
            if constexpr (std::is_floating_point_v<S>) {
                total += comp_[c];
                comp_[c] = S(0);
            }
            if (total != S(0)) out.emplace_back(c, total);
            buf_[c] = S(0);
        }
        touched_.clear();
        return out;
    }

  private:
    std::vector<S> buf_;
    std::vector<S> comp_;
    std::vector<int> touched_;
};

template <class S>
void require_state_indexed(const basic_stoch_matrix<S>& P, const state_partition& part) {
    if (P.dim != (1 << part.n))
        throw std::invalid_argument("matrix dimension does not match the partition's state set");
}

}  // namespace

template <class S>
basic_stoch_matrix<S> build_full_B(basic_game_params<S> params) {
    return assemble_full(game_tag::B, params);
}

template <class S>
basic_stoch_matrix<S> build_full_A(int n) {
    basic_game_params<S> gp;
    gp.n = n;
    gp.p0 = gp.p1 = gp.p2 = S(1) / S(2);
    return assemble_full(game_tag::A, gp);
}

template <class S>
basic_stoch_matrix<S> build_full_Aprime(int n) {
    basic_game_params<S> gp;
    gp.n = n;
    return assemble_full(game_tag::Aprime, gp);
}

template <class S>
basic_stoch_matrix<S> mix(const basic_stoch_matrix<S>& PA, const basic_stoch_matrix<S>& PB,
                          S gamma) {
    if (PA.dim != PB.dim) throw std::invalid_argument("mix: dimension mismatch");
    if (PA.kind != PB.kind) throw std::invalid_argument("mix: construction kind mismatch");
    if (gamma < S(0) || gamma > S(1)) throw std::invalid_argument("mix: gamma outside [0,1]");

    basic_stoch_matrix<S> M;
    M.kind = PA.kind;
    if (PA.game == game_tag::A && PB.game == game_tag::B)
        M.game = game_tag::C;
    else if (PA.game == game_tag::Aprime && PB.game == game_tag::B)
        M.game = game_tag::Cprime;
    else
        M.game = game_tag::other;
    M.params = PB.params;
    M.params.gamma = gamma;
    M.partition = PB.partition;
    M.dim = PA.dim;
    M.rows.resize(M.dim);

    const S cg = S(1) - gamma;
    for (int r = 0; r < M.dim; ++r) {
        const auto& ra = PA.rows[r];
        const auto& rb = PB.rows[r];
        auto& out = M.rows[r];
        out.reserve(ra.size() + rb.size());
        std::size_t ia = 0, ib = 0;
        while (ia < ra.size() || ib < rb.size()) {
            int ca = ia < ra.size() ? ra[ia].first : M.dim;
            int cb = ib < rb.size() ? rb[ib].first : M.dim;
            S v(0);
            int col;
            if (ca == cb) {
                col = ca;
                v = gamma * ra[ia].second + cg * rb[ib].second;
                ++ia, ++ib;
            } else if (ca < cb) {
                col = ca;
                v = gamma * ra[ia].second;
                ++ia;
            } else {
                col = cb;
                v = cg * rb[ib].second;
                ++ib;
            }
            if (v != S(0)) out.emplace_back(col, std::move(v));
        }
    }
    return M;
}

template <class S>
basic_stoch_matrix<S> reduce_lumped(const basic_stoch_matrix<S>& P,
                                    std::shared_ptr<const state_partition> part, bool verify,
                                    double tol) {
    require_state_indexed(P, *part);
    if (verify) {
        auto report = check_lumpable(P, *part, tol);
        if (!report.lumpable) throw not_lumpable_error(std::move(report));
    }
    const int K = part->num_classes();
    basic_stoch_matrix<S> M;
    M.game = P.game;
    M.kind = chain_kind::lumped;
    M.params = P.params;
    M.partition = part;
    M.dim = K;
    M.rows.resize(K);
    class_accumulator<S> acc(K);
    for (int c = 0; c < K; ++c) {
        for (const auto& [y, v] : P.rows[part->representatives[c]])
            acc.add(part->class_of[y], v);
        M.rows[c] = acc.take_sorted();
    }
    return M;
}

template <class S>
basic_stoch_matrix<S> reduce_averaged(const basic_stoch_matrix<S>& P,
                                      std::shared_ptr<const state_partition> part) {
    require_state_indexed(P, *part);
    const int K = part->num_classes();
    basic_stoch_matrix<S> M;
    M.game = P.game;
    M.kind = chain_kind::averaged;
    M.params = P.params;
    M.partition = part;
    M.dim = K;
    M.rows.resize(K);
    class_accumulator<S> acc(K);
    for (int c = 0; c < K; ++c) {
        for (state_t x : part->members[c])
            for (const auto& [y, v] : P.rows[x]) acc.add(part->class_of[y], v);
        auto row = acc.take_sorted();
        const S size = S(part->size_of(c));
        for (auto& [col, v] : row) v /= size;
        M.rows[c] = std::move(row);
    }
    return M;
}

template <class S>
basic_tri_chain<S> build_li_B(basic_game_params<S> params) {
    validate(params, kMinPlayers, 1 << 24);
    const int n = params.n;
    basic_tri_chain<S> T;
    T.n = n;
    T.game = game_tag::B;
    T.params = params;
    const S D = S(n) * S(n - 1) * S(n - 2);
    const S q0 = S(1) - params.p0, q1 = S(1) - params.p1, q2 = S(1) - params.p2;
    auto resize_all = [&](auto&... vs) { (vs.assign(n + 1, S(0)), ...); };
    resize_all(T.up_win, T.down_lose, T.stay_win, T.stay_lose, T.up_free, T.down_free,
               T.stay_free);
    for (int i = 0; i <= n; ++i) {
        // Weights are the expected neighbour-count multiplicities over a
        // uniformly random configuration with i winners; the boundary rows
        // come out right because out-of-range terms carry a zero factor.
        const S a = S(n - i) * S(n - i - 1) * S(n - i - 2);  // picked loser, m = 0
        const S b = S(2) * S(i) * S(n - i) * S(n - i - 1);   // picked loser, m = 1
        const S c = S(i) * S(i - 1) * S(n - i);              // picked loser, m = 2
        const S d = S(i) * S(n - i) * S(n - i - 1);          // picked winner, m = 0
        const S e = S(2) * S(i) * S(i - 1) * S(n - i);       // picked winner, m = 1
        const S f = S(i) * S(i - 1) * S(i - 2);              // picked winner, m = 2
        T.up_win[i] = (a * params.p0 + b * params.p1 + c * params.p2) / D;
        T.stay_lose[i] = (a * q0 + b * q1 + c * q2) / D;
        T.down_lose[i] = (d * q0 + e * q1 + f * q2) / D;
        T.stay_win[i] = (d * params.p0 + e * params.p1 + f * params.p2) / D;
    }
    return T;
}

template <class S>
basic_tri_chain<S> build_li_Aprime(int n) {
    if (n < kMinPlayers) throw std::invalid_argument("need at least 3 players");
    basic_tri_chain<S> T;
    T.n = n;
    T.game = game_tag::Aprime;
    T.params.n = n;
    const S D = S(n) * S(n - 1);
    auto resize_all = [&](auto&... vs) { (vs.assign(n + 1, S(0)), ...); };
    resize_all(T.up_win, T.down_lose, T.stay_win, T.stay_lose, T.up_free, T.down_free,
               T.stay_free);
    for (int i = 0; i <= n; ++i) {
        T.up_free[i] = S(n - i) * S(n - i - 1) / D;
        T.down_free[i] = S(i) * S(i - 1) / D;
        T.stay_free[i] = S(1) - T.up_free[i] - T.down_free[i];
    }
    return T;
}

template <class S>
basic_tri_chain<S> mix_li(const basic_tri_chain<S>& A, const basic_tri_chain<S>& B, S gamma) {
    if (A.n != B.n) throw std::invalid_argument("mix_li: dimension mismatch");
    if (gamma < S(0) || gamma > S(1)) throw std::invalid_argument("mix_li: gamma outside [0,1]");
    basic_tri_chain<S> T;
    T.n = A.n;
    if (A.game == game_tag::Aprime && B.game == game_tag::B)
        T.game = game_tag::Cprime;
    else
        T.game = game_tag::other;
    T.params = B.params;
    T.params.gamma = gamma;
    const S cg = S(1) - gamma;
    auto blend = [&](const std::vector<S>& va, const std::vector<S>& vb) {
        std::vector<S> out(va.size());
        for (std::size_t i = 0; i < va.size(); ++i) out[i] = gamma * va[i] + cg * vb[i];
        return out;
    };
    T.up_win = blend(A.up_win, B.up_win);
    T.down_lose = blend(A.down_lose, B.down_lose);
    T.stay_win = blend(A.stay_win, B.stay_win);
    T.stay_lose = blend(A.stay_lose, B.stay_lose);
    T.up_free = blend(A.up_free, B.up_free);
    T.down_free = blend(A.down_free, B.down_free);
    T.stay_free = blend(A.stay_free, B.stay_free);
    return T;
}

template <class S>
basic_tri_chain<S> build_li_Cprime(basic_game_params<S> params) {
    return mix_li(build_li_Aprime<S>(params.n), build_li_B(params), params.gamma);
}

template <class S>
basic_stoch_matrix<S> to_matrix(const basic_tri_chain<S>& T) {
    basic_stoch_matrix<S> M;
    M.game = T.game;
    M.kind = chain_kind::li_chain;
    M.params = T.params;
    M.dim = T.dim();
    M.rows.resize(M.dim);
    for (int i = 0; i <= T.n; ++i) {
        auto& row = M.rows[i];
        if (i > 0 && T.down(i) != S(0)) row.emplace_back(i - 1, T.down(i));
        if (T.stay(i) != S(0)) row.emplace_back(i, T.stay(i));
        if (i < T.n && T.up(i) != S(0)) row.emplace_back(i + 1, T.up(i));
    }
    return M;
}

template <class S>
basic_signed_matrix<S> dotted(const basic_stoch_matrix<S>& P) {
    if (P.game == game_tag::other)
        throw std::invalid_argument("cannot sign a matrix of unknown construction");

    basic_signed_matrix<S> M;
    M.dim = P.dim;
    M.rows.resize(P.dim);

    auto signed_terms = [&](state_t x) {
        row_terms<S> terms = game_row(P.game, P.params, x);
        std::vector<std::pair<state_t, S>> out;
        out.reserve(terms.size());
        for (const auto& t : terms) {
            S v = t.win - t.lose;
            if (v != S(0)) out.emplace_back(t.y, std::move(v));
        }
        return out;
    };

    switch (P.kind) {
        case chain_kind::full:
            for (state_t x = 0; x < state_t(P.dim); ++x) {
                for (auto& [y, v] : signed_terms(x)) M.rows[x].emplace_back(int(y), std::move(v));
            }
            break;
        case chain_kind::lumped: {
            const auto& part = *P.partition;
            class_accumulator<S> acc(P.dim);
            for (int c = 0; c < P.dim; ++c) {
                for (auto& [y, v] : signed_terms(part.representatives[c]))
                    acc.add(part.class_of[y], v);
                M.rows[c] = acc.take_sorted();
            }
            break;
        }
        case chain_kind::averaged: {
            const auto& part = *P.partition;
            class_accumulator<S> acc(P.dim);
            for (int c = 0; c < P.dim; ++c) {
                for (state_t x : part.members[c])
                    for (auto& [y, v] : signed_terms(x)) acc.add(part.class_of[y], v);
                auto row = acc.take_sorted();
                const S size = S(part.size_of(c));
                for (auto& [col, v] : row) v /= size;
                M.rows[c] = std::move(row);
            }
            break;
        }
        case chain_kind::li_chain: {
            // Rebuild the tridiagonal chain to recover the payoff split the
            // plain matrix view flattened away.
            basic_tri_chain<S> T;
            switch (P.game) {
                case game_tag::B: T = build_li_B(P.params); break;
                case game_tag::Aprime: T = build_li_Aprime<S>(P.params.n); break;
                case game_tag::Cprime: T = build_li_Cprime(P.params); break;
                default:
                    throw std::invalid_argument("cannot sign this tridiagonal construction");
            }
            return dotted(T);
        }
    }
    return M;
}

template <class S>
basic_signed_matrix<S> dotted(const basic_tri_chain<S>& T) {
    basic_signed_matrix<S> M;
    M.dim = T.dim();
    M.rows.resize(M.dim);
    for (int i = 0; i <= T.n; ++i) {
        auto& row = M.rows[i];
        if (i > 0 && T.down_lose[i] != S(0)) row.emplace_back(i - 1, -T.down_lose[i]);
        S diag = T.stay_win[i] - T.stay_lose[i];
        if (diag != S(0)) row.emplace_back(i, std::move(diag));
        if (i < T.n && T.up_win[i] != S(0)) row.emplace_back(i + 1, T.up_win[i]);
    }
    return M;
}

template <class S>
void dump_triplets(const basic_stoch_matrix<S>& P, std::ostream& out) {
    char buf[64];
    for (int r = 0; r < P.dim; ++r)
        for (const auto& [c, v] : P.rows[r]) {
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", r, c, to_double(v));
            out << buf;
        }
}

#define PARRONDO_INSTANTIATE(S)                                                               \
    template basic_stoch_matrix<S> build_full_B<S>(basic_game_params<S>);                     \
    template basic_stoch_matrix<S> build_full_A<S>(int);                                      \
    template basic_stoch_matrix<S> build_full_Aprime<S>(int);                                 \
    template basic_stoch_matrix<S> mix<S>(const basic_stoch_matrix<S>&,                       \
                                          const basic_stoch_matrix<S>&, S);                   \
    template basic_stoch_matrix<S> reduce_lumped<S>(const basic_stoch_matrix<S>&,             \
                                                    std::shared_ptr<const state_partition>,   \
                                                    bool, double);                            \
    template basic_stoch_matrix<S> reduce_averaged<S>(const basic_stoch_matrix<S>&,           \
                                                      std::shared_ptr<const state_partition>); \
    template basic_tri_chain<S> build_li_B<S>(basic_game_params<S>);                          \
    template basic_tri_chain<S> build_li_Aprime<S>(int);                                      \
    template basic_tri_chain<S> mix_li<S>(const basic_tri_chain<S>&, const basic_tri_chain<S>&, \
                                          S);                                                 \
    template basic_tri_chain<S> build_li_Cprime<S>(basic_game_params<S>);                     \
    template basic_stoch_matrix<S> to_matrix<S>(const basic_tri_chain<S>&);                   \
    template basic_signed_matrix<S> dotted<S>(const basic_stoch_matrix<S>&);                  \
    template basic_signed_matrix<S> dotted<S>(const basic_tri_chain<S>&);                     \
    template void dump_triplets<S>(const basic_stoch_matrix<S>&, std::ostream&);

PARRONDO_INSTANTIATE(double)
PARRONDO_INSTANTIATE(rational)
#undef PARRONDO_INSTANTIATE

}  // namespace parrondo
