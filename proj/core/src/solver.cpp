#include "parrondo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>

#include "parrondo/chains.hpp"
#include "parrondo/gth.hpp"
#include "parrondo/rational.hpp"

namespace parrondo {

std::string to_string(solve_method m) {
    switch (m) {
        case solve_method::full: return "full";
        case solve_method::dihedral: return "dihedral";
        case solve_method::li: return "li";
        case solve_method::closed_form: return "closed-form";
    }
    return "?";
}

namespace {

// Largest dimension the dense elimination buffer is allowed to reach
// (~3.2 GB); the canonical-orbit chains top out well below this.
constexpr int kMaxDenseDim = 20000;

struct scc_result {
    std::vector<int> comp;
    int count = 0;
};

// Iterative Tarjan over the positive-entry graph of a sparse matrix.
template <class S>
scc_result strongly_connected_components(const basic_stoch_matrix<S>& P) {
    const int n = P.dim;
    scc_result out;
    out.comp.assign(n, -1);
    std::vector<int> index(n, -1), low(n, 0), stack;
    std::vector<char> on_stack(n, 0);
    struct frame {
        int v;
        std::size_t edge;
    };
    std::vector<frame> call;
    int next_index = 0;

    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        call.push_back({root, 0});
        while (!call.empty()) {
            frame& fr = call.back();
            const int v = fr.v;
            if (fr.edge < P.rows[v].size()) {
                const int w = P.rows[v][fr.edge].first;
                ++fr.edge;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
            } else {
                call.pop_back();
                if (!call.empty()) low[call.back().v] = std::min(low[call.back().v], low[v]);
                if (low[v] == index[v]) {
                    while (true) {
                        const int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        out.comp[w] = out.count;
                        if (w == v) break;
                    }
                    ++out.count;
                }
            }
        }
    }
    return out;
}

// The unique closed communicating class, as an ascending state list.
template <class S>
std::vector<int> recurrent_support(const basic_stoch_matrix<S>& P) {
    const scc_result scc = strongly_connected_components(P);
    std::vector<char> leaks(scc.count, 0);
    for (int v = 0; v < P.dim; ++v)
        for (const auto& [w, prob] : P.rows[v])
            if (scc.comp[v] != scc.comp[w]) leaks[scc.comp[v]] = 1;
    int closed = -1, closed_count = 0;
    for (int c = 0; c < scc.count; ++c)
        if (!leaks[c]) {
            ++closed_count;
            closed = c;
        }
    if (closed_count != 1)
        throw multiple_recurrent_classes_error(
            "chain has " + std::to_string(closed_count) +
            " closed communicating classes; stationary distribution is not unique");
    std::vector<int> support;
    for (int v = 0; v < P.dim; ++v)
        if (scc.comp[v] == closed) support.push_back(v);
    return support;
}

template <class S>
double stationary_residual(const basic_stoch_matrix<S>& P, const std::vector<S>& pi,
                           const std::vector<int>& support) {
    std::vector<S> acc(P.dim, S(0));
    for (int v : support)
        for (const auto& [w, prob] : P.rows[v]) acc[w] += pi[v] * prob;
    double worst = 0.0;
    for (int j = 0; j < P.dim; ++j)
        worst = std::max(worst, std::abs(to_double(acc[j] - pi[j])));
    return worst;
}

}  // namespace

template <class S>
basic_stationary_result<S> stationary(const basic_stoch_matrix<S>& P, double residual_threshold) {
    basic_stationary_result<S> result;
    result.support = recurrent_support(P);
    const int m = int(result.support.size());
    result.pi.assign(P.dim, S(0));

    if (m == 1) {
        result.pi[result.support[0]] = S(1);
    } else {
        if (m > kMaxDenseDim)
            throw std::invalid_argument("recurrent class too large for the dense solve");
        std::vector<int> local(P.dim, -1);
        for (int i = 0; i < m; ++i) local[result.support[i]] = i;
        std::vector<S> dense(std::size_t(m) * m, S(0));
        for (int i = 0; i < m; ++i)
            for (const auto& [w, prob] : P.rows[result.support[i]])
                if (local[w] >= 0) dense[std::size_t(i) * m + local[w]] = prob;
        std::vector<S> pi_local;
        if constexpr (std::is_same_v<S, double>)
            pi_local = gth_dense(dense, m);
        else
            pi_local = gth_dense_generic(dense, m);
        for (int i = 0; i < m; ++i) result.pi[result.support[i]] = std::move(pi_local[i]);
    }

    result.residual = stationary_residual(P, result.pi, result.support);
    if (result.residual > residual_threshold)
        throw numerical_failure_error("stationary residual " + std::to_string(result.residual) +
                                      " exceeds threshold");
    return result;
}

template <class S>
basic_stationary_result<S> stationary_birth_death(const basic_tri_chain<S>& T) {
    const int n = T.n;
    // Communicating classes of a tridiagonal chain are intervals; find them
    // and keep the single one with no way out.
    int closed_lo = -1, closed_hi = -1, closed_count = 0;
    int a = 0;
    for (int i = 0; i <= n; ++i) {
        const bool extends = i < n && T.up(i) != S(0) && T.down(i + 1) != S(0);
        if (extends) continue;
        const int b = i;
        const bool closed =
            (a == 0 || T.down(a) == S(0)) && (b == n || T.up(b) == S(0));
        if (closed) {
            ++closed_count;
            closed_lo = a;
            closed_hi = b;
        }
        a = i + 1;
    }
    if (closed_count != 1)
        throw multiple_recurrent_classes_error(
            "tridiagonal chain has " + std::to_string(closed_count) +
            " closed communicating intervals; stationary distribution is not unique");

    basic_stationary_result<S> result;
    result.pi.assign(n + 1, S(0));
    for (int i = closed_lo; i <= closed_hi; ++i) result.support.push_back(i);

    if constexpr (std::is_same_v<S, double>) {
        // Detailed balance in log space: the unnormalized weights span a
        // dynamic range far beyond double for win counts in the thousands.
        std::vector<double> logw(closed_hi - closed_lo + 1, 0.0);
        for (int i = closed_lo; i < closed_hi; ++i)
            logw[i - closed_lo + 1] =
                logw[i - closed_lo] + std::log(T.up(i)) - std::log(T.down(i + 1));
        const double peak = *std::max_element(logw.begin(), logw.end());
        double total = 0.0;
        for (int i = closed_lo; i <= closed_hi; ++i) {
            result.pi[i] = std::exp(logw[i - closed_lo] - peak);
            total += result.pi[i];
        }
        for (int i = closed_lo; i <= closed_hi; ++i) result.pi[i] /= total;
    } else {
        result.pi[closed_lo] = S(1);
        S total(1);
        for (int i = closed_lo; i < closed_hi; ++i) {
            result.pi[i + 1] = result.pi[i] * T.up(i) / T.down(i + 1);
            total += result.pi[i + 1];
        }
        for (int i = closed_lo; i <= closed_hi; ++i) result.pi[i] /= total;
    }

    double worst = 0.0;
    for (int j = 0; j <= n; ++j) {
        S acc = T.stay(j) * result.pi[j] - result.pi[j];
        if (j > 0) acc += T.up(j - 1) * result.pi[j - 1];
        if (j < n) acc += T.down(j + 1) * result.pi[j + 1];
        worst = std::max(worst, std::abs(to_double(acc)));
    }
    result.residual = worst;
    return result;
}

template <class S>
S mean_profit(const basic_stationary_result<S>& st, const basic_signed_matrix<S>& Pdot) {
    if (int(st.pi.size()) != Pdot.dim)
        throw std::invalid_argument("stationary vector and signed matrix differ in dimension");
    S mu(0);
    for (int v : st.support) mu += st.pi[v] * Pdot.row_sum(v);
    return mu;
}

namespace {

template <class S>
basic_stoch_matrix<S> build_game(const basic_game_params<S>& params, game_tag game) {
    switch (game) {
        case game_tag::A: return build_full_A<S>(params.n);
        case game_tag::B: return build_full_B(params);
        case game_tag::Aprime: return build_full_Aprime<S>(params.n);
        case game_tag::C: return mix(build_full_A<S>(params.n), build_full_B(params), params.gamma);
        case game_tag::Cprime:
            return mix(build_full_Aprime<S>(params.n), build_full_B(params), params.gamma);
        case game_tag::other: break;
    }
    throw std::invalid_argument("no chain construction for this game");
}

}  // namespace

template <class S>
S mu_exact_value(const basic_game_params<S>& params, game_tag game, solve_method method,
                 double* residual, int* dim) {
    if (method == solve_method::li) return mu_li_value(params, game);
    if (method == solve_method::closed_form) {
        const closed_form_kind kind = [&] {
            if (game == game_tag::B) return closed_form_kind::B_exact;
            if (game == game_tag::Cprime) return closed_form_kind::Cprime_exact;
            throw std::invalid_argument("closed forms exist for games B and C' only");
        }();
        if (residual) *residual = 0.0;
        if (dim) *dim = 0;
        return mu_closed_form_N4(params, kind);
    }

    validate(params, kMinPlayers,
             method == solve_method::full ? kMaxFullChainPlayers : kMaxCanonicalChainPlayers);
    basic_stoch_matrix<S> P = build_game(params, game);
    if (method == solve_method::dihedral) {
        auto part = std::make_shared<const state_partition>(dihedral_partition(params.n));
        P = reduce_lumped(std::move(P), part);
    }
    const auto st = stationary(P);
    if (residual) *residual = st.residual;
    if (dim) *dim = P.dim;
    return mean_profit(st, dotted(P));
}

template <class S>
S mu_li_value(const basic_game_params<S>& params, game_tag game) {
    basic_tri_chain<S> T;
    switch (game) {
        case game_tag::B: T = build_li_B(params); break;
        case game_tag::Cprime: T = build_li_Cprime(params); break;
        default:
            throw std::invalid_argument("the count-chain approximation covers games B and C'");
    }
    const auto st = stationary_birth_death(T);
    return mean_profit(st, dotted(T));
}

profit_report mu_exact(const game_params& params, game_tag game, solve_method method) {
    profit_report rep;
    rep.params = params;
    rep.game = game;
    rep.method = method;
    rep.mu = mu_exact_value<double>(params, game, method, &rep.residual, &rep.dim);
    return rep;
}

profit_report mu_li(const game_params& params, game_tag game) {
    profit_report rep;
    rep.params = params;
    rep.game = game;
    rep.method = solve_method::li;
    rep.dim = params.n + 1;
    const auto T = [&] {
        if (game == game_tag::B) return build_li_B(params);
        if (game == game_tag::Cprime) return build_li_Cprime(params);
        throw std::invalid_argument("the count-chain approximation covers games B and C'");
    }();
    const auto st = stationary_birth_death(T);
    rep.residual = st.residual;
    rep.mu = mean_profit(st, dotted(T));
    return rep;
}

#define PARRONDO_INSTANTIATE(S)                                                            \
    template basic_stationary_result<S> stationary<S>(const basic_stoch_matrix<S>&, double); \
    template basic_stationary_result<S> stationary_birth_death<S>(const basic_tri_chain<S>&); \
    template S mean_profit<S>(const basic_stationary_result<S>&, const basic_signed_matrix<S>&); \
    template S mu_exact_value<S>(const basic_game_params<S>&, game_tag, solve_method, double*, \
                                 int*);                                                    \
    template S mu_li_value<S>(const basic_game_params<S>&, game_tag);

PARRONDO_INSTANTIATE(double)
PARRONDO_INSTANTIATE(rational)
#undef PARRONDO_INSTANTIATE

}  // namespace parrondo
