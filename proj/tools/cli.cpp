#include "cli.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "parrondo/chains.hpp"
#include "parrondo/lumpability.hpp"
#include "parrondo/montecarlo.hpp"
#include "parrondo/region.hpp"
#include "parrondo/solver.hpp"

namespace parrondo::cli {

namespace {

using nlohmann::json;

std::string fmt6(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

json report_json(const profit_report& rep) {
    return json{{"N", rep.params.n},        {"p0", rep.params.p0},
                {"p1", rep.params.p1},      {"p2", rep.params.p2},
                {"gamma", rep.params.gamma}, {"game", to_string(rep.game)},
                {"method", to_string(rep.method)}, {"mu", rep.mu},
                {"residual", rep.residual}, {"dim", rep.dim}};
}

// Writes to --out when given, else to the captured stdout.
class sink {
  public:
    sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file: " + path);
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

  private:
    std::ofstream file_;
    std::ostream& fallback_;
};

struct common_options {
    game_params params{3, 0.5, 0.5, 0.5, 0.5};
    game_tag game = game_tag::B;
    solve_method method = solve_method::dihedral;
    std::string format = "text";
    std::string out_path;
};

void add_param_flags(CLI::App* cmd, common_options& o, bool with_n = true) {
    if (with_n) cmd->add_option("--n", o.params.n, "number of players")->required();
    cmd->add_option("--p0", o.params.p0, "win probability with 0 winning neighbours");
    cmd->add_option("--p1", o.params.p1, "win probability with 1 winning neighbour");
    cmd->add_option("--p2", o.params.p2, "win probability with 2 winning neighbours");
    cmd->add_option("--gamma", o.params.gamma, "mixing weight of the fair/transfer game");
}

void add_game_flag(CLI::App* cmd, game_tag& game) {
    static const std::map<std::string, game_tag> names{
        {"A", game_tag::A},      {"B", game_tag::B},           {"Aprime", game_tag::Aprime},
        {"A'", game_tag::Aprime}, {"C", game_tag::C},          {"Cprime", game_tag::Cprime},
        {"C'", game_tag::Cprime}};
    cmd->add_option("--game", game, "which game to analyse")
        ->transform(CLI::CheckedTransformer(names));
}

void add_engine_flag(CLI::App* cmd, solve_method& method) {
    static const std::map<std::string, solve_method> names{
        {"exact", solve_method::dihedral}, {"dihedral", solve_method::dihedral},
        {"full", solve_method::full},      {"li", solve_method::li},
        {"closed", solve_method::closed_form}};
    cmd->add_option("--engine", method, "solver engine")
        ->transform(CLI::CheckedTransformer(names));
}

void add_format_flag(CLI::App* cmd, std::string& format) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));
}

// ----- mu ------------------------------------------------------------

int run_mu(const common_options& o, std::ostream& out) {
    const profit_report rep = mu_exact(o.params, o.game, o.method);
    sink s(o.out_path, out);
    if (o.format == "json") {
        s.stream() << report_json(rep).dump(2) << '\n';
    } else if (o.format == "csv") {
        s.stream() << "N,p0,p1,p2,gamma,game,method,mu,residual,dim\n";
        char buf[256];
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.17g,%s,%s,%.17g,%.17g,%d\n",
                      rep.params.n, rep.params.p0, rep.params.p1, rep.params.p2, rep.params.gamma,
                      to_string(rep.game).c_str(), to_string(rep.method).c_str(), rep.mu,
                      rep.residual, rep.dim);
        s.stream() << buf;
    } else {
        s.stream() << "mu(" << to_string(rep.game) << ", n=" << rep.params.n
                   << ", method=" << to_string(rep.method) << ") = " << fmt6(rep.mu) << '\n'
                   << "residual = " << fmt6(rep.residual) << ", dim = " << rep.dim << '\n';
    }
    return 0;
}

// ----- table ---------------------------------------------------------

struct table_row {
    int n = 0;
    std::optional<double> mu_B, muhat_B, mu_C, mu_Cp, muhat_Cp;
};

table_row compute_table_row(game_params params) {
    table_row row;
    row.n = params.n;
    if (params.n <= kMaxCanonicalChainPlayers) {
        row.mu_B = mu_exact_value<double>(params, game_tag::B, solve_method::dihedral);
        row.mu_C = mu_exact_value<double>(params, game_tag::C, solve_method::dihedral);
        row.mu_Cp = mu_exact_value<double>(params, game_tag::Cprime, solve_method::dihedral);
    }
    row.muhat_B = mu_li_value<double>(params, game_tag::B);
    row.muhat_Cp = mu_li_value<double>(params, game_tag::Cprime);
    return row;
}

int run_table(const common_options& o, int nmin, int nmax, const std::vector<int>& li_rows,
              std::ostream& out) {
    if (nmin < kMinPlayers || nmax < nmin)
        throw std::invalid_argument("need 3 <= nmin <= nmax");
    std::vector<table_row> rows;
    for (int n = nmin; n <= nmax; ++n) {
        game_params params = o.params;
        params.n = n;
        rows.push_back(compute_table_row(params));
    }
    for (int n : li_rows) {
        game_params params = o.params;
        params.n = n;
        table_row row;
        row.n = n;
        row.muhat_B = mu_li_value<double>(params, game_tag::B);
        row.muhat_Cp = mu_li_value<double>(params, game_tag::Cprime);
        rows.push_back(row);
    }

    sink s(o.out_path, out);
    auto cell = [](const std::optional<double>& v) { return v ? fmt6(*v) : std::string("--"); };
    if (o.format == "json") {
        json arr = json::array();
        for (const auto& r : rows) {
            json jr{{"N", r.n}};
            auto set = [&](const char* key, const std::optional<double>& v) {
                if (v)
                    jr[key] = *v;
                else
                    jr[key] = nullptr;
            };
            set("mu_B", r.mu_B);
            set("muhat_B", r.muhat_B);
            set("mu_C", r.mu_C);
            set("mu_Cprime", r.mu_Cp);
            set("muhat_Cprime", r.muhat_Cp);
            arr.push_back(std::move(jr));
        }
        json j{{"p0", o.params.p0},       {"p1", o.params.p1}, {"p2", o.params.p2},
               {"gamma", o.params.gamma}, {"rows", std::move(arr)}};
        s.stream() << j.dump(2) << '\n';
    } else if (o.format == "csv") {
        s.stream() << "N,mu_B,muhat_B,mu_C,mu_Cprime,muhat_Cprime\n";
        for (const auto& r : rows) {
            auto c = [](const std::optional<double>& v) {
                if (!v) return std::string();
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", *v);
                return std::string(buf);
            };
            s.stream() << r.n << ',' << c(r.mu_B) << ',' << c(r.muhat_B) << ',' << c(r.mu_C)
                       << ',' << c(r.mu_Cp) << ',' << c(r.muhat_Cp) << '\n';
        }
    } else {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%4s  %-12s %-12s %-12s %-12s %-12s\n", "N", "mu_B",
                      "muhat_B", "mu_C", "mu_C'", "muhat_C'");
        s.stream() << buf;
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%4d  %-12s %-12s %-12s %-12s %-12s\n", r.n,
                          cell(r.mu_B).c_str(), cell(r.muhat_B).c_str(), cell(r.mu_C).c_str(),
                          cell(r.mu_Cp).c_str(), cell(r.muhat_Cp).c_str());
            s.stream() << buf;
        }
    }
    return 0;
}

// ----- check-lump ------------------------------------------------------

int run_check_lump(const common_options& o, const std::string& partition_name, double tol,
                   std::ostream& out) {
    const auto part = partition_name == "count" ? count_partition(o.params.n)
                                                : dihedral_partition(o.params.n);
    basic_stoch_matrix<double> P;
    switch (o.game) {
        case game_tag::B: P = build_full_B(o.params); break;
        case game_tag::A: P = build_full_A<double>(o.params.n); break;
        case game_tag::Aprime: P = build_full_Aprime<double>(o.params.n); break;
        case game_tag::C:
            P = mix(build_full_A<double>(o.params.n), build_full_B(o.params), o.params.gamma);
            break;
        case game_tag::Cprime:
            P = mix(build_full_Aprime<double>(o.params.n), build_full_B(o.params),
                    o.params.gamma);
            break;
        case game_tag::other: throw std::invalid_argument("unknown game");
    }
    const lumpability_report rep = check_lumpable(P, part, tol);

    sink s(o.out_path, out);
    if (o.format == "json") {
        json j{{"N", o.params.n},
               {"game", to_string(o.game)},
               {"partition", partition_name},
               {"tol", tol},
               {"lumpable", rep.lumpable},
               {"max_discrepancy", rep.max_discrepancy},
               {"num_violations", rep.violations.size()}};
        if (rep.witness) {
            const auto& w = *rep.witness;
            j["witness"] = json{{"class", w.source_class},   {"x", w.x},
                                {"x_alt", w.x_alt},          {"target_class", w.target_class},
                                {"mass_x", w.mass_x},        {"mass_x_alt", w.mass_x_alt}};
        } else {
            j["witness"] = nullptr;
        }
        s.stream() << j.dump(2) << '\n';
    } else {
        s.stream() << "game " << to_string(o.game) << ", n=" << o.params.n << ", "
                   << partition_name << " partition: "
                   << (rep.lumpable ? "lumpable" : "NOT lumpable") << '\n';
        s.stream() << "max discrepancy = " << fmt6(rep.max_discrepancy)
                   << ", violations = " << rep.violations.size() << '\n';
        if (rep.witness) {
            const auto& w = *rep.witness;
            s.stream() << "witness: class " << w.source_class << ", states " << w.x << " vs "
                       << w.x_alt << " put " << fmt6(w.mass_x) << " vs " << fmt6(w.mass_x_alt)
                       << " on class " << w.target_class << '\n';
        }
    }
    return 0;
}

// ----- mc --------------------------------------------------------------

int run_mc(const common_options& o, const sim_config& cfg, bool reduced, std::ostream& out) {
    const sim_result res = reduced ? simulate_reduced_li(cfg) : simulate(cfg);
    sink s(o.out_path, out);
    if (o.format == "json") {
        json j{{"N", cfg.params.n},
               {"p0", cfg.params.p0},
               {"p1", cfg.params.p1},
               {"p2", cfg.params.p2},
               {"gamma", cfg.params.gamma},
               {"game", to_string(cfg.game)},
               {"reduced", reduced},
               {"turns", cfg.turns},
               {"seed", res.seed},
               {"stream", res.stream},
               {"mean_profit", res.mean_profit},
               {"std_error", res.std_error}};
        s.stream() << j.dump(2) << '\n';
    } else {
        s.stream() << "simulated " << to_string(cfg.game) << (reduced ? " (count chain)" : "")
                   << ", n=" << cfg.params.n << ", " << res.total_turns << " turns, seed "
                   << res.seed << '\n'
                   << "mean profit = " << fmt6(res.mean_profit) << " +- "
                   << fmt6(res.std_error) << " (1 se)\n";
    }
    return 0;
}

// ----- scan / surface ----------------------------------------------------

int run_scan(const common_options& o, int resolution, region_engine engine, std::ostream& out) {
    const region_grid grid = scan(o.params.n, o.params.gamma, resolution, engine);
    sink s(o.out_path, out);
    if (o.format == "json") {
        json pts = json::array();
        for (const auto& pt : grid.points)
            pts.push_back(json{{"p0", pt.p0},
                               {"p2", pt.p2},
                               {"p1", pt.p1},
                               {"mu_B", pt.mu_B},
                               {"mu_C", pt.mu_C},
                               {"class", to_string(pt.cls)}});
        json j{{"N", grid.n},
               {"gamma", grid.gamma},
               {"engine", to_string(grid.engine)},
               {"resolution", grid.resolution},
               {"points", std::move(pts)}};
        s.stream() << j.dump(2) << '\n';
    } else {
        write_csv(s.stream(), grid);
    }
    return 0;
}

int run_surface(const common_options& o, game_tag target, region_engine engine, int resolution,
                double tol, std::ostream& out) {
    const fair_surface_mesh mesh =
        fair_surface(o.params.n, o.params.gamma, target, engine, resolution, tol);
    sink s(o.out_path, out);
    write_json(s.stream(), mesh);
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact and approximate analysis of spatial Parrondo games"};
    app.require_subcommand(1);

    common_options o;

    auto* mu_cmd = app.add_subcommand("mu", "equilibrium mean profit at one parameter point");
    add_param_flags(mu_cmd, o);
    add_game_flag(mu_cmd, o.game);
    add_engine_flag(mu_cmd, o.method);
    add_format_flag(mu_cmd, o.format);
    mu_cmd->add_option("--out", o.out_path, "write output to this file");

    int nmin = kMinPlayers, nmax = 12;
    std::vector<int> li_rows;
    auto* table_cmd =
        app.add_subcommand("table", "profit table over a range of player counts");
    add_param_flags(table_cmd, o, /*with_n=*/false);
    table_cmd->add_option("--nmin", nmin, "first player count");
    table_cmd->add_option("--nmax", nmax, "last player count");
    table_cmd->add_option("--li-n", li_rows, "extra approximation-only player counts")
        ->delimiter(',');
    add_format_flag(table_cmd, o.format);
    table_cmd->add_option("--out", o.out_path, "write output to this file");

    std::string partition_name = "dihedral";
    double lump_tol = 1e-12;
    auto* lump_cmd = app.add_subcommand("check-lump", "lumpability verdict for a partition");
    add_param_flags(lump_cmd, o);
    add_game_flag(lump_cmd, o.game);
    lump_cmd->add_option("--partition", partition_name, "state partition to test")
        ->check(CLI::IsMember({"dihedral", "count"}));
    lump_cmd->add_option("--tol", lump_tol, "aggregation tolerance");
    add_format_flag(lump_cmd, o.format);
    lump_cmd->add_option("--out", o.out_path, "write output to this file");

    sim_config mc_cfg;
    bool mc_reduced = false;
    std::uint64_t mc_initial = 0;
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo profit estimate");
    add_param_flags(mc_cmd, o);
    add_game_flag(mc_cmd, o.game);
    mc_cmd->add_option("--turns", mc_cfg.turns, "turns counted after burn-in");
    mc_cmd->add_option("--burn-in", mc_cfg.burn_in, "turns discarded before counting");
    mc_cmd->add_option("--seed", mc_cfg.seed, "PRNG seed");
    mc_cmd->add_option("--stream", mc_cfg.stream, "PRNG stream index");
    mc_cmd->add_option("--initial", mc_initial, "initial configuration code");
    mc_cmd->add_flag("--reduced", mc_reduced, "simulate the count chain instead");
    add_format_flag(mc_cmd, o.format);
    mc_cmd->add_option("--out", o.out_path, "write output to this file");

    int resolution = 20;
    double surface_tol = 1e-10;
    std::string engine_name = "exact";
    auto* scan_cmd = app.add_subcommand("scan", "classify the parameter cube on a lattice");
    add_param_flags(scan_cmd, o);
    scan_cmd->add_option("--resolution", resolution, "lattice subdivisions per axis");
    scan_cmd->add_option("--engine", engine_name, "exact or li")
        ->check(CLI::IsMember({"exact", "li"}));
    add_format_flag(scan_cmd, o.format);
    scan_cmd->add_option("--out", o.out_path, "write output to this file");

    auto* surface_cmd = app.add_subcommand("surface", "fair-surface mesh for a game");
    add_param_flags(surface_cmd, o);
    add_game_flag(surface_cmd, o.game);
    surface_cmd->add_option("--resolution", resolution, "lattice subdivisions per axis");
    surface_cmd->add_option("--engine", engine_name, "exact or li")
        ->check(CLI::IsMember({"exact", "li"}));
    surface_cmd->add_option("--tol", surface_tol, "profit tolerance at reported roots");
    surface_cmd->add_option("--out", o.out_path, "write output to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const region_engine engine =
            engine_name == "li" ? region_engine::li : region_engine::exact;
        if (app.got_subcommand(mu_cmd)) return run_mu(o, out);
        if (app.got_subcommand(table_cmd)) return run_table(o, nmin, nmax, li_rows, out);
        if (app.got_subcommand(lump_cmd)) return run_check_lump(o, partition_name, lump_tol, out);
        if (app.got_subcommand(mc_cmd)) {
            mc_cfg.params = o.params;
            mc_cfg.game = o.game;
            mc_cfg.initial_state = state_t(mc_initial);
            return run_mc(o, mc_cfg, mc_reduced, out);
        }
        if (app.got_subcommand(scan_cmd)) return run_scan(o, resolution, engine, out);
        if (app.got_subcommand(surface_cmd))
            return run_surface(o, o.game, engine, resolution, surface_tol, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace parrondo::cli
