#pragma once

#include "grushin/table.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace grushin {

inline constexpr int kDefaultGridN = 512;
inline constexpr double kCoefficientCap = 1e100;

struct DiskProblem {
    double rho = 1.0;
    double s = 0.0;
    int n = kDefaultGridN;  // grid intervals per axis over [-rho, rho]

    void validate() const;  // throws InvalidProblem
};

// Five-point discretisation of -d_xx - |x|^(2s) d_yy on the interior nodes
// of a uniform grid. Unknowns are numbered row by row; neighbours outside
// the domain are Dirichlet zeros and stored as -1.
struct GridOperator {
    int nx = 0;  // nodes per row, boundary included
    int ny = 0;
    double hx = 0.0;
    double hy = 0.0;
    std::vector<int> node_i, node_j;
    std::vector<int> west, east, south, north;
    std::vector<double> cy;    // |x|^(2s) / hy^2 for the unknown's column
    std::vector<double> diag;  // 2/hx^2 + 2 cy
    double cx = 0.0;           // 1 / hx^2

    std::size_t size() const { return diag.size(); }
    void multiply(std::span<const double> v, std::span<double> out) const;

    // Exact transpose comparison of the assembled couplings.
    bool symmetric() const;

    struct Csr {
        std::vector<std::size_t> row_start;
        std::vector<int> col;
        std::vector<double> val;
    };
    Csr to_csr() const;
};

GridOperator assemble_disk(const DiskProblem& p);
// Rectangle (-t/2, t/2) x (0, V/t) with n intervals per side.
GridOperator assemble_rectangle(double t, double V, double s, int n);

struct Solver2DOptions {
    double cg_tol = 1e-10;
    int max_outer = 500;  // Lanczos steps
    int inner_factor = 10;  // inner cap = inner_factor * unknowns
    double eig_tol = 1e-10;  // Ritz residual bound, relative
};

struct EigenSolve2D {
    double lambda1 = 0.0;
    int outer_iterations = 0;
    long inner_iterations = 0;
};

// Lowest eigenvalue by Lanczos on the inverse operator (zero shift). Each
// application of the inverse is a conjugate-gradient solve preconditioned
// with exact line solves along the locally stiffer axis.
EigenSolve2D lowest_eigenvalue(const GridOperator& op, const Solver2DOptions& opts = {});

struct DiskSolve {
    double lambda1 = 0.0;
    double grid_h = 0.0;
    std::size_t interior_count = 0;
    double extrapolated = 0.0;
    double coarse_lambda1 = 0.0;  // n/2 grid
    int iterations = 0;
};

DiskSolve solve_disk(const DiskProblem& p, const Solver2DOptions& opts = {});

struct RectangleSolve {
    double lambda1 = 0.0;  // direct 2-D route
    double coarse_lambda1 = 0.0;
    double extrapolated = 0.0;
    double decoupled = 0.0;  // 1-D separated route
    double grid_h = 0.0;
    std::size_t interior_count = 0;
    int iterations = 0;
};

RectangleSolve solve_rectangle(double t, double V, double s, int n, const Solver2DOptions& opts = {});

// pi^2 / L^2 with L = 2 min(rho, 1).
double segment_reference(double rho);

// Columns: s, lambda1, extrapolated, reference.
SweepTable segment_limit_probe(double rho, std::span<const double> s_list, int n, int jobs = 1,
                               const Solver2DOptions& opts = {});

}  // namespace grushin
