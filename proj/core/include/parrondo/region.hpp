#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "parrondo/matrix.hpp"
#include "parrondo/params.hpp"

namespace parrondo {

// parrondo: game B fair-or-losing while the mixture C' wins.
// anti_parrondo: B fair-or-winning while C' loses. error: the solver failed
// at that point (typically multiple closed classes on the cube boundary).
enum class region_class { parrondo, anti_parrondo, neither, error };
std::string to_string(region_class c);

// exact: dihedral-reduced stationary solve. li: tridiagonal count-chain
// approximation.
enum class region_engine { exact, li };
std::string to_string(region_engine e);

struct region_point {
    double p0 = 0, p1 = 0, p2 = 0;
    double mu_B = 0;  // profit of game B alone
    double mu_C = 0;  // profit of the mixture C'
    region_class cls = region_class::neither;
};

// Evaluate one parameter point: mu_B and mu_C' via the chosen engine, then
// the sign-based classification. Solver failures are recorded as class
// error, never thrown.
region_point classify(const game_params& params, region_engine engine);

struct region_grid {
    int n = 0;
    double gamma = 0.5;
    int resolution = 0;
    region_engine engine = region_engine::exact;
    // (resolution+1)^3 points in row-major (p0, p2, p1) order.
    std::vector<region_point> points;
};

// Classify the whole (p0, p2, p1) lattice {0, 1/R, ..., 1}^3. threads = 0
// uses the PARRONDO_THREADS environment variable, else one thread.
region_grid scan(int n, double gamma, int resolution, region_engine engine, int threads = 0);

// One fair-surface mesh vertex: at column (p0, p2), the target profit
// changes sign inside [p1_lo, p1_hi] and p1 is the refined root.
struct surface_point {
    double p0 = 0, p2 = 0, p1 = 0;
    double p1_lo = 0, p1_hi = 0;
    double mu = 0;  // residual profit at the reported root
};

struct fair_surface_mesh {
    int n = 0;
    double gamma = 0.5;
    game_tag target = game_tag::B;  // B or C'
    region_engine engine = region_engine::exact;
    int resolution = 0;
    double tol = 0;
    std::vector<surface_point> points;
    std::vector<std::pair<double, double>> failed_columns;
};

// For each (p0, p2) grid column, sample the target profit along p1, bracket
// every sign change and refine it by bisection until |mu| <= tol or the
// interval is below 1e-6. Columns where the solver fails are skipped and
// listed in failed_columns.
fair_surface_mesh fair_surface(int n, double gamma, game_tag target, region_engine engine,
                               int resolution, double tol = 1e-10, int threads = 0);

// CSV with header p0,p2,p1,mu_B,mu_C,class, one row per lattice point, 17
// significant digits.
void write_csv(std::ostream& out, const region_grid& grid);

// Mesh JSON: {n, gamma, engine, target, resolution, points: [[p0,p2,p1],...]}.
void write_json(std::ostream& out, const fair_surface_mesh& mesh);

// Thread count resolution used by scan and fair_surface: explicit argument,
// else PARRONDO_THREADS, else 1.
int resolve_threads(int requested);

}  // namespace parrondo
