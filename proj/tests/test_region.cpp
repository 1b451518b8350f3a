#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

#include <json.hpp>

#include "parrondo/region.hpp"
#include "parrondo/solver.hpp"

using namespace parrondo;

TEST_SUITE_BEGIN("region");

TEST_CASE("classification follows the profit signs on reference rows") {
    // (1, 4/25, 7/10): B loses at n=5 while the mixture C' wins.
    const auto five = classify({5, 1.0, 0.16, 0.7, 0.5}, region_engine::exact);
    CHECK(five.cls == region_class::parrondo);
    CHECK(five.mu_B == doctest::Approx(-0.00219465).epsilon(5e-6));
    CHECK(five.mu_C == doctest::Approx(0.00565126).epsilon(5e-6));

    // At n=4 game B wins on its own, so there is no paradox to speak of.
    const auto four = classify({4, 1.0, 0.16, 0.7, 0.5}, region_engine::exact);
    CHECK(four.cls == region_class::neither);
    CHECK(four.mu_B == doctest::Approx(0.0799608).epsilon(5e-6));

    // (7/10, 17/25, 0) at n=7: B loses, C' wins.
    const auto seven = classify({7, 0.7, 0.68, 0.0, 0.5}, region_engine::exact);
    CHECK(seven.cls == region_class::parrondo);
    CHECK(seven.mu_B == doctest::Approx(-0.00722622).epsilon(5e-6));
    CHECK(seven.mu_C == doctest::Approx(0.00691714).epsilon(5e-6));
}

TEST_CASE("the all-fair point is classified neither with exactly zero profits") {
    const auto pt = classify({4, 0.5, 0.5, 0.5, 0.5}, region_engine::exact);
    CHECK(pt.mu_B == 0.0);
    CHECK(pt.mu_C == 0.0);
    CHECK(pt.cls == region_class::neither);
}

TEST_CASE("solver failures are folded into the point, not thrown") {
    // p0 = 0 with p2 = 1 leaves two absorbing configurations.
    const auto pt = classify({4, 0.0, 0.5, 1.0, 0.5}, region_engine::exact);
    CHECK(pt.cls == region_class::error);
}

TEST_CASE("corner lattice scan completes, flagging absorbing corners as error") {
    const auto grid = scan(3, 0.5, 1, region_engine::exact);
    REQUIRE(grid.points.size() == 8);
    for (const auto& pt : grid.points) {
        // p0 = 0 with p2 = 1 pins both the empty and the saturated circle.
        if (pt.p0 == 0.0 && pt.p2 == 1.0) CHECK(pt.cls == region_class::error);
        // All-losing and all-winning corners have a unique absorbing state.
        if (pt.p0 == pt.p1 && pt.p1 == pt.p2) CHECK(pt.cls != region_class::error);
    }
}

TEST_CASE("scan lattice is ordered row-major in (p0, p2, p1)") {
    const auto grid = scan(4, 0.5, 2, region_engine::li);
    REQUIRE(grid.points.size() == 27);
    int idx = 0;
    for (int i0 = 0; i0 <= 2; ++i0)
        for (int i2 = 0; i2 <= 2; ++i2)
            for (int i1 = 0; i1 <= 2; ++i1, ++idx) {
                CHECK(grid.points[idx].p0 == i0 / 2.0);
                CHECK(grid.points[idx].p2 == i2 / 2.0);
                CHECK(grid.points[idx].p1 == i1 / 2.0);
            }
}

TEST_CASE("classifications at shared lattice points survive refinement") {
    const auto coarse = scan(4, 0.5, 2, region_engine::exact);
    const auto fine = scan(4, 0.5, 4, region_engine::exact);
    for (int i0 = 0; i0 <= 2; ++i0)
        for (int i2 = 0; i2 <= 2; ++i2)
            for (int i1 = 0; i1 <= 2; ++i1) {
                const auto& c = coarse.points[(i0 * 3 + i2) * 3 + i1];
                const auto& f = fine.points[((2 * i0) * 5 + 2 * i2) * 5 + 2 * i1];
                CHECK(c.cls == f.cls);
                CHECK(c.mu_B == f.mu_B);
            }
}

TEST_CASE("multithreaded scan output is identical to single-threaded") {
    const auto one = scan(4, 0.5, 3, region_engine::exact, 1);
    const auto four = scan(4, 0.5, 3, region_engine::exact, 4);
    REQUIRE(one.points.size() == four.points.size());
    for (std::size_t i = 0; i < one.points.size(); ++i) {
        CHECK(one.points[i].mu_B == four.points[i].mu_B);
        CHECK(one.points[i].mu_C == four.points[i].mu_C);
        CHECK(one.points[i].cls == four.points[i].cls);
    }
}

TEST_CASE("thread count resolution order: argument, environment, default") {
    unsetenv("PARRONDO_THREADS");
    CHECK(resolve_threads(0) == 1);
    CHECK(resolve_threads(3) == 3);
    setenv("PARRONDO_THREADS", "5", 1);
    CHECK(resolve_threads(0) == 5);
    CHECK(resolve_threads(2) == 2);
    unsetenv("PARRONDO_THREADS");
}

TEST_CASE("fair surface finds the all-fair root exactly") {
    const auto mesh = fair_surface(4, 0.5, game_tag::B, region_engine::exact, 2);
    bool found = false;
    for (const auto& pt : mesh.points)
        if (pt.p0 == 0.5 && pt.p2 == 0.5 && pt.p1 == 0.5) {
            found = true;
            CHECK(pt.mu == 0.0);
        }
    CHECK(found);
}

TEST_CASE("reported roots satisfy the tolerance and bracket contract") {
    const auto mesh = fair_surface(4, 0.5, game_tag::Cprime, region_engine::exact, 4, 1e-10);
    CHECK(!mesh.points.empty());
    for (const auto& pt : mesh.points) {
        CHECK(pt.p1 >= 0.0);
        CHECK(pt.p1 <= 1.0);
        CHECK(pt.p1_lo <= pt.p1);
        CHECK(pt.p1 <= pt.p1_hi);
        CHECK(std::abs(pt.mu) <= 1e-8);
        // Re-evaluate at the reported root; it must reproduce.
        game_params params{4, pt.p0, pt.p1, pt.p2, 0.5};
        const double mu =
            mu_exact_value<double>(params, game_tag::Cprime, solve_method::dihedral);
        CHECK(mu == doctest::Approx(pt.mu).epsilon(1e-12));
    }
}

TEST_CASE("coarse surface roots persist under refinement") {
    const auto coarse = fair_surface(4, 0.5, game_tag::B, region_engine::exact, 4);
    const auto fine = fair_surface(4, 0.5, game_tag::B, region_engine::exact, 8);
    for (const auto& c : coarse.points) {
        bool matched = false;
        for (const auto& f : fine.points)
            if (f.p0 == c.p0 && f.p2 == c.p2 && std::abs(f.p1 - c.p1) <= 0.25 + 1e-9)
                matched = true;
        CHECK(matched);
    }
}

TEST_CASE("surface target must be a game with a profit surface") {
    CHECK_THROWS_AS(fair_surface(4, 0.5, game_tag::Aprime, region_engine::exact, 2),
                    std::invalid_argument);
}

TEST_CASE("CSV output shape") {
    const auto grid = scan(5, 0.5, 2, region_engine::li);
    std::ostringstream os;
    write_csv(os, grid);
    std::istringstream is(os.str());
    std::string line;
    REQUIRE(std::getline(is, line));
    CHECK(line == "p0,p2,p1,mu_B,mu_C,class");
    int rows = 0;
    while (std::getline(is, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
    }
    CHECK(rows == 27);
}

TEST_CASE("mesh JSON round-trips") {
    const auto mesh = fair_surface(4, 0.5, game_tag::B, region_engine::li, 3);
    std::ostringstream os;
    write_json(os, mesh);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j.at("N") == 4);
    CHECK(j.at("gamma") == 0.5);
    CHECK(j.at("engine") == "li");
    CHECK(j.at("target") == "B");
    CHECK(j.at("resolution") == 3);
    REQUIRE(j.at("points").is_array());
    CHECK(j.at("points").size() == mesh.points.size());
    for (const auto& pt : j.at("points")) REQUIRE(pt.size() == 3);
    CHECK(j.at("failed_columns").is_array());
}

TEST_SUITE_END();
