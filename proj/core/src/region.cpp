#include "parrondo/region.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "parrondo/solver.hpp"

namespace parrondo {

std::string to_string(region_class c) {
    switch (c) {
        case region_class::parrondo: return "parrondo";
        case region_class::anti_parrondo: return "anti-parrondo";
        case region_class::neither: return "neither";
        case region_class::error: return "error";
    }
    return "?";
}

std::string to_string(region_engine e) {
    return e == region_engine::exact ? "exact" : "li";
}

int resolve_threads(int requested) {
    int t = requested;
    if (t <= 0) {
        if (const char* env = std::getenv("PARRONDO_THREADS")) t = std::atoi(env);
    }
    if (t <= 0) t = 1;
    return std::min(t, 64);
}

namespace {

// Work-stealing loop over [0, count); worker exceptions are rethrown on the
// calling thread after everyone joined.
template <class F>
void parallel_for(int count, int threads, F&& fn) {
    threads = std::min(threads, count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            try {
                for (int i; (i = next.fetch_add(1)) < count;) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
}

double profit_at(const game_params& params, game_tag game, region_engine engine) {
    if (engine == region_engine::exact)
        return mu_exact_value<double>(params, game, solve_method::dihedral);
    return mu_li_value<double>(params, game);
}

}  // namespace

region_point classify(const game_params& params, region_engine engine) {
    region_point pt;
    pt.p0 = params.p0;
    pt.p1 = params.p1;
    pt.p2 = params.p2;
    try {
        pt.mu_B = profit_at(params, game_tag::B, engine);
        pt.mu_C = profit_at(params, game_tag::Cprime, engine);
    } catch (const std::runtime_error&) {
        pt.cls = region_class::error;
        return pt;
    }
    if (pt.mu_B <= 0.0 && pt.mu_C > 0.0)
        pt.cls = region_class::parrondo;
    else if (pt.mu_B >= 0.0 && pt.mu_C < 0.0)
        pt.cls = region_class::anti_parrondo;
    else
        pt.cls = region_class::neither;
    return pt;
}

region_grid scan(int n, double gamma, int resolution, region_engine engine, int threads) {
    if (resolution < 1) throw std::invalid_argument("resolution must be at least 1");
    region_grid grid;
    grid.n = n;
    grid.gamma = gamma;
    grid.resolution = resolution;
    grid.engine = engine;
    const int side = resolution + 1;
    grid.points.resize(std::size_t(side) * side * side);

    parallel_for(side * side, resolve_threads(threads), [&](int col) {
        const int i0 = col / side, i2 = col % side;
        game_params params;
        params.n = n;
        params.gamma = gamma;
        params.p0 = double(i0) / resolution;
        params.p2 = double(i2) / resolution;
        for (int i1 = 0; i1 < side; ++i1) {
            params.p1 = double(i1) / resolution;
            grid.points[(std::size_t(i0) * side + i2) * side + i1] = classify(params, engine);
        }
    });
    return grid;
}

fair_surface_mesh fair_surface(int n, double gamma, game_tag target, region_engine engine,
                               int resolution, double tol, int threads) {
    if (resolution < 1) throw std::invalid_argument("resolution must be at least 1");
    if (target != game_tag::B && target != game_tag::Cprime)
        throw std::invalid_argument("fair surfaces are defined for games B and C'");

    fair_surface_mesh mesh;
    mesh.n = n;
    mesh.gamma = gamma;
    mesh.target = target;
    mesh.engine = engine;
    mesh.resolution = resolution;
    mesh.tol = tol;

    const int side = resolution + 1;
    std::vector<std::vector<surface_point>> column_points(std::size_t(side) * side);
    std::vector<char> column_failed(std::size_t(side) * side, 0);

    parallel_for(side * side, resolve_threads(threads), [&](int col) {
        const int i0 = col / side, i2 = col % side;
        game_params params;
        params.n = n;
        params.gamma = gamma;
        params.p0 = double(i0) / resolution;
        params.p2 = double(i2) / resolution;

        auto mu_at = [&](double p1) {
            game_params p = params;
            p.p1 = p1;
            return profit_at(p, target, engine);
        };

        try {
            std::vector<double> samples(side, 0.0);
            for (int i1 = 0; i1 < side; ++i1) samples[i1] = mu_at(double(i1) / resolution);

            auto& out = column_points[col];
            for (int i1 = 0; i1 < side; ++i1) {
                const double p1 = double(i1) / resolution;
                if (samples[i1] == 0.0) {
                    out.push_back({params.p0, params.p2, p1, p1, p1, 0.0});
                    continue;
                }
                if (i1 + 1 >= side || !(samples[i1] * samples[i1 + 1] < 0.0)) continue;

                double lo = p1, hi = double(i1 + 1) / resolution;
                double flo = samples[i1];
                double mid = 0.5 * (lo + hi), fmid = mu_at(mid);
                // Bisect on the sign change until the profit at the midpoint
                // is inside tol; the width floor only guards pathological
                // slopes near machine precision.
                while (std::abs(fmid) > tol && hi - lo > 1e-15) {
                    if ((flo < 0.0) == (fmid < 0.0)) {
                        lo = mid;
                        flo = fmid;
                    } else {
                        hi = mid;
                    }
                    mid = 0.5 * (lo + hi);
                    fmid = mu_at(mid);
                }
                out.push_back({params.p0, params.p2, mid, lo, hi, fmid});
            }
        } catch (const std::runtime_error&) {
            column_failed[col] = 1;
        }
    });

    for (int col = 0; col < side * side; ++col) {
        if (column_failed[col])
            mesh.failed_columns.emplace_back(double(col / side) / resolution,
                                             double(col % side) / resolution);
        for (auto& pt : column_points[col]) mesh.points.push_back(pt);
    }
    return mesh;
}

void write_csv(std::ostream& out, const region_grid& grid) {
    out << "p0,p2,p1,mu_B,mu_C,class\n";
    char buf[192];
    for (const auto& pt : grid.points) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%s\n", pt.p0, pt.p2, pt.p1,
                      pt.mu_B, pt.mu_C, to_string(pt.cls).c_str());
        out << buf;
    }
}

void write_json(std::ostream& out, const fair_surface_mesh& mesh) {
    nlohmann::json j;
    j["format_version"] = 1;
    j["N"] = mesh.n;
    j["gamma"] = mesh.gamma;
    j["engine"] = to_string(mesh.engine);
    j["target"] = to_string(mesh.target);
    j["resolution"] = mesh.resolution;
    j["tol"] = mesh.tol;
    auto points = nlohmann::json::array();
    for (const auto& pt : mesh.points) points.push_back({pt.p0, pt.p2, pt.p1});
    j["points"] = std::move(points);
    auto failed = nlohmann::json::array();
    for (const auto& [p0, p2] : mesh.failed_columns) failed.push_back({p0, p2});
    j["failed_columns"] = std::move(failed);
    out << j.dump(2) << '\n';
}

}  // namespace parrondo
