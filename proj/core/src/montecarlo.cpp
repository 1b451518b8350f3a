#include "parrondo/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parrondo/chains.hpp"
#include "parrondo/rng.hpp"

namespace parrondo {

namespace {

std::uint64_t resolve_burn_in(const sim_config& cfg) {
    if (cfg.burn_in != kAutoBurnIn) return cfg.burn_in;
    const std::uint64_t n = std::uint64_t(cfg.params.n);
    return std::min<std::uint64_t>(1'000'000, 1000 * n * n);
}

// Accumulates per-turn payoffs into ~100 equal batches; the spread of the
// batch means gives the standard error of the overall mean.
class batch_accumulator {
  public:
    explicit batch_accumulator(std::uint64_t turns)
        : turns_(turns), batches_(std::min<std::uint64_t>(100, turns)) {
        sums_.assign(std::size_t(batches_), 0.0);
        counts_.assign(std::size_t(batches_), 0);
    }

    void add(std::uint64_t turn_index, int payoff) {
        const std::size_t b = std::size_t(turn_index * batches_ / turns_);
        sums_[b] += payoff;
        counts_[b] += 1;
        total_ += payoff;
    }

    void finish(sim_result& r) const {
        r.total_turns = turns_;
        r.mean_profit = total_ / double(turns_);
        if (batches_ < 2) {
            r.std_error = 0.0;
            return;
        }
        double mbar = 0.0;
        std::vector<double> means(sums_.size());
        for (std::size_t b = 0; b < sums_.size(); ++b) {
            means[b] = sums_[b] / double(counts_[b]);
            mbar += means[b];
        }
        mbar /= double(batches_);
        double var = 0.0;
        for (double m : means) var += (m - mbar) * (m - mbar);
        var /= double(batches_ - 1);
        r.std_error = std::sqrt(var / double(batches_));
    }

  private:
    std::uint64_t turns_;
    std::uint64_t batches_;
    std::vector<double> sums_;
    std::vector<std::uint64_t> counts_;
    double total_ = 0.0;
};

struct game_mix {
    bool has_coin = false;
    bool has_transfer = false;
    bool fair_coin = false;  // the coin part tosses 1/2 regardless of m
};

game_mix mix_of(game_tag game) {
    switch (game) {
        case game_tag::A: return {true, false, true};
        case game_tag::B: return {true, false, false};
        case game_tag::Aprime: return {false, true, false};
        case game_tag::C: return {true, false, false};  // fair part handled per turn
        case game_tag::Cprime: return {true, true, false};
        case game_tag::other: break;
    }
    throw std::invalid_argument("cannot simulate a game of unknown construction");
}

template <class OnTurn>
sim_result run_full(const sim_config& cfg, std::uint64_t burn, OnTurn&& on_turn) {
    validate(cfg.params, kMinPlayers, 20);
    if (cfg.turns == 0) throw std::invalid_argument("need at least one turn");
    const int n = cfg.params.n;
    const double pm[3] = {cfg.params.p0, cfg.params.p1, cfg.params.p2};
    const double gamma = cfg.params.gamma;
    const game_mix gm = mix_of(cfg.game);

    xoshiro256pp rng(cfg.seed, cfg.stream);
    state_t x = cfg.initial_state & state_mask(n);
    batch_accumulator acc(cfg.turns);

    for (std::uint64_t t = 0; t < burn + cfg.turns; ++t) {
        const state_t before = x;
        int payoff = 0;
        int player = 0;
        game_tag played = cfg.game;

        bool coin_turn = gm.has_coin;
        if (gm.has_coin && gm.has_transfer) coin_turn = rng.uniform() >= gamma;

        if (coin_turn) {
            player = 1 + int(rng.below(std::uint64_t(n)));
            double p;
            if (cfg.game == game_tag::C) {
                // gamma picks the fair coin, otherwise the spatial coin
                const bool fair = rng.uniform() < gamma;
                played = fair ? game_tag::A : game_tag::B;
                p = fair ? 0.5 : pm[neighbour_winners(x, n, player)];
            } else {
                played = gm.fair_coin ? game_tag::A : game_tag::B;
                p = gm.fair_coin ? 0.5 : pm[neighbour_winners(x, n, player)];
            }
            const bool win = rng.uniform() < p;
            payoff = win ? 1 : -1;
            x = with_bit(x, n, player, win ? 1 : 0);
        } else {
            player = 1 + int(rng.below(std::uint64_t(n)));
            const int dir = (rng() & 1u) ? 1 : -1;
            played = game_tag::Aprime;
            x = transfer(x, n, player, dir);
        }

        if (t >= burn) acc.add(t - burn, payoff);
        on_turn(played, player, before, x, payoff);
    }

    sim_result res;
    acc.finish(res);
    res.seed = cfg.seed;
    res.stream = cfg.stream;
    return res;
}

}  // namespace

sim_result simulate(const sim_config& cfg) {
    return run_full(cfg, resolve_burn_in(cfg), [](game_tag, int, state_t, state_t, int) {});
}

sim_result simulate_trace(const sim_config& cfg, std::vector<turn_record>& trace) {
    trace.clear();
    trace.reserve(std::size_t(cfg.turns));
    return run_full(cfg, 0,
                    [&](game_tag played, int player, state_t before, state_t after, int payoff) {
                        trace.push_back({played, player, before, after, payoff});
                    });
}

sim_result simulate_reduced_li(const sim_config& cfg) {
    if (cfg.turns == 0) throw std::invalid_argument("need at least one turn");
    const tri_chain T = [&] {
        if (cfg.game == game_tag::B) return build_li_B(cfg.params);
        if (cfg.game == game_tag::Cprime) return build_li_Cprime(cfg.params);
        throw std::invalid_argument("the count-chain simulation covers games B and C'");
    }();
    const int n = T.n;

    // Cumulative category masses per win count. Order: up_win, stay_win,
    // down_lose, stay_lose, up_free, down_free, stay_free; payoffs +1, +1,
    // -1, -1, 0, 0, 0 and count steps +1, 0, -1, 0, +1, -1, 0.
    constexpr int kCats = 7;
    constexpr int kPayoff[kCats] = {1, 1, -1, -1, 0, 0, 0};
    constexpr int kStep[kCats] = {1, 0, -1, 0, 1, -1, 0};
    std::vector<double> cum(std::size_t(n + 1) * kCats);
    for (int i = 0; i <= n; ++i) {
        const double cats[kCats] = {T.up_win[i],  T.stay_win[i],  T.down_lose[i], T.stay_lose[i],
                                    T.up_free[i], T.down_free[i], T.stay_free[i]};
        double run = 0.0;
        for (int k = 0; k < kCats; ++k) {
            run += cats[k];
            cum[std::size_t(i) * kCats + k] = run;
        }
    }

    xoshiro256pp rng(cfg.seed, cfg.stream);
    int i = std::min(popcount_state(cfg.initial_state), n);
    const std::uint64_t burn = resolve_burn_in(cfg);
    batch_accumulator acc(cfg.turns);

    for (std::uint64_t t = 0; t < burn + cfg.turns; ++t) {
        const double u = rng.uniform();
        const double* c = &cum[std::size_t(i) * kCats];
        int k = 0;
        while (k < kCats - 1 && u >= c[k]) ++k;
        if (t >= burn) acc.add(t - burn, kPayoff[k]);
        i += kStep[k];
    }

    sim_result res;
    acc.finish(res);
    res.seed = cfg.seed;
    res.stream = cfg.stream;
    return res;
}

}  // namespace parrondo
