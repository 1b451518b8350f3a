#include <doctest.h>

#include <cmath>
#include <memory>
#include <random>
#include <vector>

#include "parrondo/chains.hpp"
#include "parrondo/lumpability.hpp"
#include "parrondo/rational.hpp"

using namespace parrondo;

namespace {

const game_params kGeneric{4, 0.37, 0.61, 0.83, 0.5};

std::shared_ptr<const state_partition> shared(state_partition part) {
    return std::make_shared<const state_partition>(std::move(part));
}

game_params random_params(std::mt19937_64& gen, int n) {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    return {n, u(gen), u(gen), u(gen), u(gen)};
}

template <class S>
void check_row_stochastic(const basic_stoch_matrix<S>& P, double tol = 1e-14) {
    for (int r = 0; r < P.dim; ++r) {
        CHECK(to_double(P.row_sum(r)) == doctest::Approx(1.0).epsilon(tol));
        for (const auto& [c, v] : P.rows[r]) {
            CHECK(c >= 0);
            CHECK(c < P.dim);
            CHECK(to_double(v) > 0.0);
        }
    }
}

}  // namespace

TEST_SUITE_BEGIN("chains");

TEST_CASE("all builders produce row-stochastic matrices") {
    std::mt19937_64 gen(7);
    for (int n = 3; n <= 8; ++n) {
        const game_params params = random_params(gen, n);
        check_row_stochastic(build_full_B(params));
        check_row_stochastic(build_full_A<double>(n));
        check_row_stochastic(build_full_Aprime<double>(n));
        check_row_stochastic(mix(build_full_A<double>(n), build_full_B(params), params.gamma));
        check_row_stochastic(
            mix(build_full_Aprime<double>(n), build_full_B(params), params.gamma));
        check_row_stochastic(to_matrix(build_li_B(params)));
        check_row_stochastic(to_matrix(build_li_Aprime<double>(n)));
        check_row_stochastic(to_matrix(build_li_Cprime(params)));
    }
}

TEST_CASE("four-player coin game matches the reference display entry by entry") {
    // 4 * P_B for n=4 as a code table: 0 -> 0, 1..3 -> p_m, 4..6 -> q_m,
    // 7 -> the diagonal collecting the no-change outcomes.
    const int code[16][16] = {
        {7, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0},
        {4, 7, 0, 2, 0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0},
        {4, 0, 7, 2, 0, 0, 2, 0, 0, 0, 1, 0, 0, 0, 0, 0},
        {0, 5, 5, 7, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 0},
        {4, 0, 0, 0, 7, 1, 2, 0, 0, 0, 0, 0, 2, 0, 0, 0},
        {0, 4, 0, 0, 4, 7, 0, 3, 0, 0, 0, 0, 0, 3, 0, 0},
        {0, 0, 5, 0, 5, 0, 7, 2, 0, 0, 0, 0, 0, 0, 2, 0},
        {0, 0, 0, 5, 0, 6, 5, 7, 0, 0, 0, 0, 0, 0, 0, 3},
        {4, 0, 0, 0, 0, 0, 0, 0, 7, 2, 1, 0, 2, 0, 0, 0},
        {0, 5, 0, 0, 0, 0, 0, 0, 5, 7, 0, 2, 0, 2, 0, 0},
        {0, 0, 4, 0, 0, 0, 0, 0, 4, 0, 7, 3, 0, 0, 3, 0},
        {0, 0, 0, 5, 0, 0, 0, 0, 0, 5, 6, 7, 0, 0, 0, 3},
        {0, 0, 0, 0, 5, 0, 0, 0, 5, 0, 0, 0, 7, 2, 2, 0},
        {0, 0, 0, 0, 0, 6, 0, 0, 0, 5, 0, 0, 5, 7, 0, 3},
        {0, 0, 0, 0, 0, 0, 5, 0, 0, 0, 6, 0, 5, 0, 7, 3},
        {0, 0, 0, 0, 0, 0, 0, 6, 0, 0, 0, 6, 0, 6, 6, 7}};

    const double p[] = {kGeneric.p0, kGeneric.p1, kGeneric.p2};
    const double q[] = {1 - kGeneric.p0, 1 - kGeneric.p1, 1 - kGeneric.p2};
    auto diagonal = [&](int r) {
        switch (r) {
            case 0: return 4 * q[0];
            case 1: case 2: case 4: case 8: return p[0] + q[0] + 2 * q[1];
            case 3: case 6: case 9: case 12: return 2 * (p[1] + q[1]);
            case 5: case 10: return 2 * (p[0] + q[2]);
            case 15: return 4 * p[2];
            default: return 2 * p[1] + p[2] + q[2];
        }
    };

    const auto P = build_full_B(kGeneric);
    REQUIRE(P.dim == 16);
    CHECK(P.game == game_tag::B);
    CHECK(P.kind == chain_kind::full);
    for (int r = 0; r < 16; ++r) {
        for (int c = 0; c < 16; ++c) {
            double expected = 0.0;
            if (code[r][c] == 7)
                expected = diagonal(r);
            else if (code[r][c] >= 4)
                expected = q[code[r][c] - 4];
            else if (code[r][c] >= 1)
                expected = p[code[r][c] - 1];
            CHECK(4 * P.entry(r, c) == doctest::Approx(expected).epsilon(1e-14));
        }
    }
}

TEST_CASE("four-player transfer game matches the reference display entry by entry") {
    // 8 * P_A' for n=4.
    const int eight[16][16] = {
        {0, 2, 2, 0, 2, 0, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0},
        {0, 2, 1, 1, 0, 2, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0},
        {0, 1, 2, 1, 1, 0, 1, 0, 0, 0, 2, 0, 0, 0, 0, 0},
        {0, 1, 1, 2, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 0},
        {0, 0, 1, 0, 2, 2, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0},
        {0, 0, 0, 1, 0, 4, 1, 0, 0, 1, 0, 0, 1, 0, 0, 0},
        {0, 0, 1, 0, 1, 1, 2, 1, 0, 0, 1, 0, 0, 0, 1, 0},
        {0, 0, 0, 1, 0, 2, 1, 2, 0, 0, 0, 1, 0, 0, 1, 0},
        {0, 1, 0, 0, 1, 0, 0, 0, 2, 1, 2, 0, 1, 0, 0, 0},
        {0, 1, 0, 0, 0, 1, 0, 0, 1, 2, 1, 1, 0, 1, 0, 0},
        {0, 0, 0, 1, 0, 0, 1, 0, 0, 1, 4, 0, 1, 0, 0, 0},
        {0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 2, 2, 0, 1, 0, 0},
        {0, 0, 0, 0, 1, 1, 0, 0, 1, 0, 1, 0, 2, 1, 1, 0},
        {0, 0, 0, 0, 0, 2, 0, 0, 0, 1, 0, 1, 1, 2, 1, 0},
        {0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 2, 0, 1, 1, 2, 0},
        {0, 0, 0, 0, 0, 0, 0, 2, 0, 0, 0, 2, 0, 2, 2, 0}};

    const auto P = build_full_Aprime<double>(4);
    REQUIRE(P.dim == 16);
    CHECK(P.game == game_tag::Aprime);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) CHECK(P.entry(r, c) == eight[r][c] / 8.0);
}

TEST_CASE("transfer-game entries that are easiest to get wrong") {
    // Transfers where giver and receiver interact twice and the diagonal of
    // the saturated state; a widely circulated version of this matrix has
    // wrong values at exactly these six places.
    const auto P = build_full_Aprime<double>(4);
    CHECK(P.entry(5, 3) == 1 / 8.0);
    CHECK(P.entry(5, 12) == 1 / 8.0);
    CHECK(P.entry(10, 2) == 0.0);
    CHECK(P.entry(10, 12) == 1 / 8.0);
    CHECK(P.entry(15, 7) == 2 / 8.0);
    CHECK(P.entry(15, 9) == 0.0);
    // No transfer can empty the circle: column 0 is identically zero.
    for (int r = 0; r < 16; ++r) CHECK(P.entry(r, 0) == 0.0);
}

TEST_CASE("dihedral quotient of the four-player coin game") {
    // 4 * P-bar_B over the six orbit classes.
    const auto P = reduce_lumped(build_full_B(kGeneric), shared(dihedral_partition(4)));
    REQUIRE(P.dim == 6);
    CHECK(P.kind == chain_kind::lumped);
    const double p0 = kGeneric.p0, p1 = kGeneric.p1, p2 = kGeneric.p2;
    const double q0 = 1 - p0, q1 = 1 - p1, q2 = 1 - p2;
    const double expected[6][6] = {
        {4 * q0, 4 * p0, 0, 0, 0, 0},
        {q0, p0 + q0 + 2 * q1, 2 * p1, p0, 0, 0},
        {0, 2 * q1, 2 * (p1 + q1), 0, 2 * p1, 0},
        {0, 2 * q0, 0, 2 * (p0 + q2), 2 * p2, 0},
        {0, 0, 2 * q1, q2, 2 * p1 + p2 + q2, p2},
        {0, 0, 0, 0, 4 * q2, 4 * p2}};
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            CHECK(4 * P.entry(r, c) == doctest::Approx(expected[r][c]).epsilon(1e-14));
}

TEST_CASE("dihedral quotient of the four-player transfer game") {
    const auto P =
        reduce_lumped(build_full_Aprime<double>(4), shared(dihedral_partition(4)));
    REQUIRE(P.dim == 6);
    const int four[6][6] = {{0, 4, 0, 0, 0, 0}, {0, 2, 1, 1, 0, 0}, {0, 1, 1, 1, 1, 0},
                            {0, 0, 2, 2, 0, 0}, {0, 0, 1, 1, 2, 0}, {0, 0, 0, 0, 4, 0}};
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c) CHECK(P.entry(r, c) == four[r][c] / 4.0);
}

TEST_CASE("count-averaged four-player transfer game") {
    const auto P =
        reduce_averaged(build_full_Aprime<double>(4), shared(count_partition(4)));
    REQUIRE(P.dim == 5);
    CHECK(P.kind == chain_kind::averaged);
    const int six[5][5] = {
        {0, 6, 0, 0, 0}, {0, 3, 3, 0, 0}, {0, 1, 4, 1, 0}, {0, 0, 3, 3, 0}, {0, 0, 0, 6, 0}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c)
            CHECK(P.entry(r, c) == doctest::Approx(six[r][c] / 6.0).epsilon(1e-14));
}

TEST_CASE("count-averaged four-player coin game") {
    // 12 * the averaged quotient; the middle diagonal is the average
    // (p0 + 2 p1 + 2 q1 + q2)/6 of the two within-class aggregate rows.
    const auto P = reduce_averaged(build_full_B(kGeneric), shared(count_partition(4)));
    REQUIRE(P.dim == 5);
    const double p0 = kGeneric.p0, p1 = kGeneric.p1, p2 = kGeneric.p2;
    const double q0 = 1 - p0, q1 = 1 - p1, q2 = 1 - p2;
    const double expected[5][5] = {
        {12 * q0, 12 * p0, 0, 0, 0},
        {3 * q0, 3 * (p0 + q0 + 2 * q1), 3 * (p0 + 2 * p1), 0, 0},
        {0, 2 * (q0 + 2 * q1), 2 * (p0 + 2 * p1 + 2 * q1 + q2), 2 * (2 * p1 + p2), 0},
        {0, 0, 3 * (2 * q1 + q2), 3 * (2 * p1 + p2 + q2), 3 * p2},
        {0, 0, 0, 12 * q2, 12 * p2}};
    for (int r = 0; r < 5; ++r)
        for (int c = 0; c < 5; ++c)
            CHECK(12 * P.entry(r, c) == doctest::Approx(expected[r][c]).epsilon(1e-14));
}

TEST_CASE("tridiagonal count chains equal the brute-force averaged reductions") {
    std::mt19937_64 gen(11);
    for (int n = 3; n <= 10; ++n) {
        const game_params params = random_params(gen, n);
        const auto part = shared(count_partition(n));

        const auto li_B = to_matrix(build_li_B(params));
        const auto avg_B = reduce_averaged(build_full_B(params), part);
        const auto li_Ap = to_matrix(build_li_Aprime<double>(n));
        const auto avg_Ap = reduce_averaged(build_full_Aprime<double>(n), part);
        const auto li_Cp = to_matrix(build_li_Cprime(params));
        const auto avg_Cp = reduce_averaged(
            mix(build_full_Aprime<double>(n), build_full_B(params), params.gamma), part);

        REQUIRE(li_B.dim == n + 1);
        for (int r = 0; r <= n; ++r) {
            for (int c = 0; c <= n; ++c) {
                CHECK(li_B.entry(r, c) == doctest::Approx(avg_B.entry(r, c)).epsilon(1e-14));
                CHECK(li_Ap.entry(r, c) == doctest::Approx(avg_Ap.entry(r, c)).epsilon(1e-14));
                CHECK(li_Cp.entry(r, c) == doctest::Approx(avg_Cp.entry(r, c)).epsilon(1e-14));
            }
        }
    }
}

TEST_CASE("gamma-mixtures interpolate entrywise and tag the result") {
    const auto PA = build_full_A<double>(4);
    const auto PAp = build_full_Aprime<double>(4);
    const auto PB = build_full_B(kGeneric);

    const auto C = mix(PA, PB, 0.25);
    CHECK(C.game == game_tag::C);
    const auto Cp = mix(PAp, PB, 0.25);
    CHECK(Cp.game == game_tag::Cprime);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            CHECK(C.entry(r, c) ==
                  doctest::Approx(0.25 * PA.entry(r, c) + 0.75 * PB.entry(r, c)).epsilon(1e-14));
            CHECK(Cp.entry(r, c) ==
                  doctest::Approx(0.25 * PAp.entry(r, c) + 0.75 * PB.entry(r, c)).epsilon(1e-14));
        }

    // Degenerate weights collapse onto the ingredients.
    const auto all_B = mix(PA, PB, 0.0);
    const auto all_A = mix(PA, PB, 1.0);
    for (int r = 0; r < 16; ++r)
        for (int c = 0; c < 16; ++c) {
            CHECK(all_B.entry(r, c) == PB.entry(r, c));
            CHECK(all_A.entry(r, c) == PA.entry(r, c));
        }
}

TEST_CASE("game A is the fair-coin slice of game B") {
    const auto PA = build_full_A<double>(5);
    const auto PB = build_full_B(game_params{5, 0.5, 0.5, 0.5, 0.0});
    REQUIRE(PA.dim == PB.dim);
    CHECK(PA.game == game_tag::A);
    for (int r = 0; r < PA.dim; ++r)
        for (int c = 0; c < PA.dim; ++c) CHECK(PA.entry(r, c) == PB.entry(r, c));
}

TEST_CASE("quotient over the trivial partition returns the chain itself") {
    const auto P = build_full_B(kGeneric);
    const auto Q = reduce_lumped(P, shared(singleton_partition(4)));
    REQUIRE(Q.dim == P.dim);
    for (int r = 0; r < P.dim; ++r)
        for (int c = 0; c < P.dim; ++c) CHECK(Q.entry(r, c) == P.entry(r, c));
}

TEST_CASE("reduce_lumped refuses partitions the chain is not lumpable for") {
    CHECK_THROWS_AS(reduce_lumped(build_full_B(kGeneric), shared(count_partition(4))),
                    not_lumpable_error);
}

TEST_CASE("payoff-signed companions") {
    const auto PB = build_full_B(kGeneric);
    const auto dB = dotted(PB);

    SUBCASE("coin game: sign flips on losing mass only, magnitudes bounded by P") {
        for (int r = 0; r < PB.dim; ++r) {
            for (const auto& [c, v] : dB.rows[r]) {
                const double pv = PB.entry(r, c);
                CHECK(std::abs(v) <= pv + 1e-15);
                if (c != r) CHECK(std::abs(std::abs(v) - pv) < 1e-15);
            }
            // Off-diagonal sign is the payoff: gaining a winner pays +1.
            for (const auto& [c, v] : dB.rows[r])
                if (c != r)
                    CHECK((popcount_state(state_t(c)) > popcount_state(state_t(r))) ==
                          (v > 0));
        }
    }

    SUBCASE("transfer game: identically zero") {
        const auto dAp = dotted(build_full_Aprime<double>(4));
        for (int r = 0; r < dAp.dim; ++r)
            for (const auto& [c, v] : dAp.rows[r]) {
                (void)c;
                CHECK(v == 0.0);
            }
    }

    SUBCASE("mixture with the transfer game scales the coin part by 1-gamma") {
        const auto Cp = mix(build_full_Aprime<double>(4), PB, kGeneric.gamma);
        const auto dCp = dotted(Cp);
        for (int r = 0; r < PB.dim; ++r)
            for (int c = 0; c < PB.dim; ++c) {
                double coin = 0.0;
                for (const auto& [cc, v] : dB.rows[r])
                    if (cc == c) coin = v;
                double mixed = 0.0;
                for (const auto& [cc, v] : dCp.rows[r])
                    if (cc == c) mixed = v;
                CHECK(mixed == doctest::Approx((1 - kGeneric.gamma) * coin).epsilon(1e-14));
            }
    }

    SUBCASE("signing commutes with the dihedral quotient") {
        const auto part = shared(dihedral_partition(4));
        const auto dQ = dotted(reduce_lumped(PB, part));
        // Aggregate the full signed rows of each representative by class.
        const auto Q = reduce_lumped(PB, part);
        REQUIRE(dQ.dim == Q.dim);
        for (int c = 0; c < Q.dim; ++c) {
            const state_t rep = part->representatives[c];
            std::vector<double> agg(Q.dim, 0.0);
            for (const auto& [y, v] : dB.rows[rep]) agg[part->class_of[y]] += v;
            for (int d = 0; d < Q.dim; ++d) {
                double got = 0.0;
                for (const auto& [cc, v] : dQ.rows[c])
                    if (cc == d) got = v;
                CHECK(got == doctest::Approx(agg[d]).epsilon(1e-14));
            }
        }
    }

    SUBCASE("tridiagonal signing: up-mass positive, down-mass negative") {
        const auto T = build_li_B(kGeneric);
        const auto dT = dotted(T);
        for (int i = 0; i <= T.n; ++i)
            for (const auto& [c, v] : dT.rows[i]) {
                if (c > i) CHECK(v == doctest::Approx(T.up_win[i]));
                if (c < i) CHECK(v == doctest::Approx(-T.down_lose[i]));
                if (c == i) CHECK(v == doctest::Approx(T.stay_win[i] - T.stay_lose[i]));
            }
    }
}

TEST_CASE("exact-rational construction is exact") {
    basic_game_params<rational> params{4, rational(37, 100), rational(61, 100),
                                       rational(83, 100), rational(1, 2)};
    const auto P = build_full_B(params);
    for (int r = 0; r < P.dim; ++r) CHECK(P.row_sum(r) == rational(1));

    // The dihedral quotient stays exact; spot-check the middle class rows.
    const auto Q = reduce_lumped(P, shared(dihedral_partition(4)));
    CHECK(Q.entry(2, 2) == (params.p(1) + (rational(1) - params.p(1))) / 2);
    CHECK(Q.entry(3, 3) == (params.p(0) + (rational(1) - params.p(2))) / 2);
    CHECK(Q.entry(5, 4) == rational(1) - params.p(2));

    const auto T = build_li_B(params);
    for (int i = 0; i <= 4; ++i)
        CHECK(T.up(i) + T.down(i) + T.stay(i) == rational(1));
}

TEST_SUITE_END();
