#include "grushin/grushin2d.hpp"

#include "grushin/errors.hpp"
#include "grushin/parallel.hpp"
#include "grushin/radial.hpp"
#include "grushin/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace grushin {

void DiskProblem::validate() const {
    std::ostringstream why;
    if (!(rho > 0.0) || !std::isfinite(rho)) why << "rho must be > 0 (got " << rho << "); ";
    if (!(s >= 0.0) || !std::isfinite(s)) why << "s must be >= 0 (got " << s << "); ";
    if (n < 64) why << "n must be >= 64 (got " << n << "); ";
    const std::string msg = why.str();
    if (!msg.empty()) throw InvalidProblem("invalid disk problem: " + msg);
}

namespace {

double grushin_coefficient(double x, double s) {
    if (s == 0.0) return 1.0;
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.0;
    const double logc = 2.0 * s * std::log(ax);
    if (logc > std::log(kCoefficientCap)) return kCoefficientCap;
    return std::exp(logc);
}

// Numbers the nodes accepted by `inside(i, j)` and wires the stencil.
template <class Inside, class XOf>
GridOperator build(int nx, int ny, double hx, double hy, double s, Inside inside, XOf x_of) {
    GridOperator op;
    op.nx = nx;
    op.ny = ny;
    op.hx = hx;
    op.hy = hy;
    op.cx = 1.0 / (hx * hx);

    std::vector<int> index(static_cast<std::size_t>(nx) * ny, -1);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            if (!inside(i, j)) continue;
            index[static_cast<std::size_t>(j) * nx + i] = static_cast<int>(op.node_i.size());
            op.node_i.push_back(i);
            op.node_j.push_back(j);
        }
    }
    const std::size_t m = op.node_i.size();
    if (m < 16) {
        throw DegenerateGrid("grid has only " + std::to_string(m) + " interior nodes; refine n");
    }
    auto at = [&](int i, int j) {
        if (i < 0 || j < 0 || i >= nx || j >= ny) return -1;
        return index[static_cast<std::size_t>(j) * nx + i];
    };

    std::vector<double> column_coeff(nx);
    for (int i = 0; i < nx; ++i) column_coeff[i] = grushin_coefficient(x_of(i), s) / (hy * hy);

    op.west.resize(m);
    op.east.resize(m);
    op.south.resize(m);
    op.north.resize(m);
    op.cy.resize(m);
    op.diag.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
        const int i = op.node_i[k], j = op.node_j[k];
        op.west[k] = at(i - 1, j);
        op.east[k] = at(i + 1, j);
        op.south[k] = at(i, j - 1);
        op.north[k] = at(i, j + 1);
        op.cy[k] = column_coeff[i];
        op.diag[k] = 2.0 * op.cx + 2.0 * op.cy[k];
    }
    if (!op.symmetric()) throw InvalidProblem("assembled operator is not symmetric");
    return op;
}

}  // namespace

void GridOperator::multiply(std::span<const double> v, std::span<double> out) const {
    const std::size_t m = size();
    for (std::size_t k = 0; k < m; ++k) {
        double horizontal = 0.0, vertical = 0.0;
        if (west[k] >= 0) horizontal += v[west[k]];
        if (east[k] >= 0) horizontal += v[east[k]];
        if (south[k] >= 0) vertical += v[south[k]];
        if (north[k] >= 0) vertical += v[north[k]];
        out[k] = diag[k] * v[k] - cx * horizontal - cy[k] * vertical;
    }
}

bool GridOperator::symmetric() const {
    const std::size_t m = size();
    for (std::size_t k = 0; k < m; ++k) {
        if (east[k] >= 0 && west[east[k]] != static_cast<int>(k)) return false;
        if (west[k] >= 0 && east[west[k]] != static_cast<int>(k)) return false;
        if (north[k] >= 0 && (south[north[k]] != static_cast<int>(k) || cy[north[k]] != cy[k])) return false;
        if (south[k] >= 0 && (north[south[k]] != static_cast<int>(k) || cy[south[k]] != cy[k])) return false;
    }
    return true;
}

GridOperator::Csr GridOperator::to_csr() const {
    Csr a;
    const std::size_t m = size();
    a.row_start.reserve(m + 1);
    a.row_start.push_back(0);
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<std::pair<int, double>> entries;
        entries.emplace_back(static_cast<int>(k), diag[k]);
        if (west[k] >= 0) entries.emplace_back(west[k], -cx);
        if (east[k] >= 0) entries.emplace_back(east[k], -cx);
        if (south[k] >= 0) entries.emplace_back(south[k], -cy[k]);
        if (north[k] >= 0) entries.emplace_back(north[k], -cy[k]);
        std::sort(entries.begin(), entries.end());
        for (const auto& [c, v] : entries) {
            a.col.push_back(c);
            a.val.push_back(v);
        }
        a.row_start.push_back(a.col.size());
    }
    return a;
}

namespace {

GridOperator disk_grid(double rho, double s, int n) {
    const double h = 2.0 * rho / n;
    // Node (i, j) sits at rho ((2i - n) / n, (2j - n) / n); membership is
    // tested in integers.
    const long long nn = static_cast<long long>(n) * n;
    auto inside = [&](int i, int j) {
        const long long a = 2LL * i - n, b = 2LL * j - n;
        return a * a + b * b < nn;
    };
    auto x_of = [&](int i) { return rho * (2.0 * i - n) / n; };
    return build(n + 1, n + 1, h, h, s, inside, x_of);
}

}  // namespace

GridOperator assemble_disk(const DiskProblem& p) {
    p.validate();
    return disk_grid(p.rho, p.s, p.n);
}

GridOperator assemble_rectangle(double t, double V, double s, int n) {
    if (!(t > 0.0) || !(V > 0.0) || !(s >= 0.0) || n < 2) {
        throw InvalidProblem("rectangle needs t > 0, V > 0, s >= 0 and n >= 2");
    }
    const double hx = t / n, hy = (V / t) / n;
    auto inside = [&](int i, int j) { return i > 0 && i < n && j > 0 && j < n; };
    auto x_of = [&](int i) { return t * (2.0 * i - n) / (2.0 * n); };
    return build(n + 1, n + 1, hx, hy, s, inside, x_of);
}

namespace {

// Block-Jacobi preconditioner whose blocks are maximal runs of unknowns
// along the stiffer axis, each inverted exactly by a tridiagonal solve.
class LinePreconditioner {
public:
    explicit LinePreconditioner(const GridOperator& op) {
        const std::size_t m = op.size();
        std::vector<char> horizontal(m);
        for (std::size_t k = 0; k < m; ++k) horizontal[k] = op.cx >= op.cy[k];

        order_.reserve(m);
        pivot_.reserve(m);
        lower_.reserve(m);
        upper_.reserve(m);
        std::vector<char> placed(m, 0);
        for (std::size_t k = 0; k < m; ++k) {
            if (placed[k]) continue;
            const bool h = horizontal[k];
            const auto& ahead = h ? op.east : op.north;
            starts_.push_back(order_.size());
            for (int q = static_cast<int>(k); q >= 0 && horizontal[q] == h && !placed[q]; q = ahead[q]) {
                placed[q] = 1;
                order_.push_back(q);
                const int nxt = ahead[q];
                const bool linked = nxt >= 0 && horizontal[nxt] == h;
                upper_.push_back(linked ? -(h ? op.cx : op.cy[q]) : 0.0);
            }
        }
        starts_.push_back(order_.size());
        for (std::size_t b = 0; b + 1 < starts_.size(); ++b) {
            for (std::size_t a = starts_[b]; a < starts_[b + 1]; ++a) {
                const double d = op.diag[order_[a]];
                if (a == starts_[b]) {
                    lower_.push_back(0.0);
                    pivot_.push_back(d);
                } else {
                    const double l = upper_[a - 1] / pivot_[a - 1];
                    lower_.push_back(l);
                    pivot_.push_back(d - l * upper_[a - 1]);
                }
            }
        }
        inv_pivot_.resize(m);
        for (std::size_t a = 0; a < m; ++a) inv_pivot_[a] = 1.0 / pivot_[a];
        work_.resize(m);
    }

    std::size_t covered() const { return order_.size(); }

    void apply(std::span<const double> r, std::span<double> z) const {
        for (std::size_t b = 0; b + 1 < starts_.size(); ++b) {
            const std::size_t a0 = starts_[b], a1 = starts_[b + 1];
            double prev = 0.0;
            for (std::size_t a = a0; a < a1; ++a) {
                prev = r[order_[a]] - lower_[a] * prev;
                work_[a] = prev;
            }
            double next = 0.0;
            for (std::size_t a = a1; a-- > a0;) {
                next = (work_[a] - upper_[a] * next) * inv_pivot_[a];
                z[order_[a]] = next;
            }
        }
    }

private:
    std::vector<int> order_;
    std::vector<std::size_t> starts_;
    std::vector<double> pivot_, inv_pivot_, lower_, upper_;
    mutable std::vector<double> work_;
};

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Preconditioned CG for op x = b starting from the given x. Returns the
// number of iterations.
long conjugate_gradient(const GridOperator& op, const LinePreconditioner& precond, std::span<const double> b,
                        std::span<double> x, double tol, long max_iter) {
    const std::size_t m = op.size();
    std::vector<double> r(m), z(m), p(m), q(m);
    op.multiply(x, q);
    for (std::size_t i = 0; i < m; ++i) r[i] = b[i] - q[i];
    const double bnorm = std::sqrt(dot(b, b));
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), 0.0);
        return 0;
    }
    const double target = tol * bnorm;
    if (std::sqrt(dot(r, r)) <= target) return 0;
    precond.apply(r, z);
    p = z;
    double rz = dot(r, z);
    for (long it = 1; it <= max_iter; ++it) {
        op.multiply(p, q);
        const double alpha = rz / dot(p, q);
        double rr = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * q[i];
            rr += r[i] * r[i];
        }
        if (std::sqrt(rr) <= target) return it;
        precond.apply(r, z);
        const double rz_new = dot(r, z);
        const double beta = rz_new / rz;
        rz = rz_new;
        for (std::size_t i = 0; i < m; ++i) p[i] = z[i] + beta * p[i];
    }
    throw NonConvergence("conjugate gradients did not reach tolerance in " + std::to_string(max_iter) +
                         " iterations");
}

}  // namespace

EigenSolve2D lowest_eigenvalue(const GridOperator& op, const Solver2DOptions& opts) {
    const std::size_t m = op.size();
    const LinePreconditioner precond(op);
    if (precond.covered() != m) throw InvalidProblem("line preconditioner does not cover the grid");
    const long inner_cap = static_cast<long>(opts.inner_factor) * static_cast<long>(m);

    // Lanczos on the inverse, started from the constant vector. The largest
    // Ritz value of the inverse gives lambda1; convergence is declared when
    // the Ritz residual bound is below eig_tol relative.
    std::vector<double> q(m, 1.0 / std::sqrt(static_cast<double>(m)));
    std::vector<double> q_prev(m, 0.0), w(m);
    SymmetricTridiagonal negated;
    EigenSolve2D out;
    double beta_prev = 0.0;
    for (int k = 1; k <= opts.max_outer; ++k) {
        std::fill(w.begin(), w.end(), 0.0);
        out.inner_iterations += conjugate_gradient(op, precond, q, w, opts.cg_tol, inner_cap);
        const double alpha = dot(q, w);
        for (std::size_t i = 0; i < m; ++i) w[i] -= alpha * q[i] + beta_prev * q_prev[i];
        const double beta = std::sqrt(dot(w, w));

        negated.diag.push_back(-alpha);
        const LowestEigenpair ritz = lowest_eigenpair(negated);
        const double theta = -ritz.eigenvalue;
        out.outer_iterations = k;
        out.lambda1 = 1.0 / theta;
        const double bound = beta * std::abs(ritz.vector.back());
        if (bound <= opts.eig_tol * theta || beta <= 1e-300) return out;

        negated.off.push_back(-beta);
        for (std::size_t i = 0; i < m; ++i) {
            q_prev[i] = q[i];
            q[i] = w[i] / beta;
        }
        beta_prev = beta;
    }
    throw NonConvergence("Lanczos iteration did not settle in " + std::to_string(opts.max_outer) + " steps");
}

DiskSolve solve_disk(const DiskProblem& p, const Solver2DOptions& opts) {
    p.validate();
    const GridOperator fine = assemble_disk(p);
    const EigenSolve2D fine_eig = lowest_eigenvalue(fine, opts);

    const GridOperator coarse = disk_grid(p.rho, p.s, p.n / 2);
    const EigenSolve2D coarse_eig = lowest_eigenvalue(coarse, opts);

    DiskSolve out;
    out.lambda1 = fine_eig.lambda1;
    out.coarse_lambda1 = coarse_eig.lambda1;
    // First-order combination for the masked boundary.
    out.extrapolated = 2.0 * fine_eig.lambda1 - coarse_eig.lambda1;
    out.grid_h = fine.hx;
    out.interior_count = fine.size();
    out.iterations = fine_eig.outer_iterations;
    return out;
}

RectangleSolve solve_rectangle(double t, double V, double s, int n, const Solver2DOptions& opts) {
    const GridOperator fine = assemble_rectangle(t, V, s, n);
    const EigenSolve2D fine_eig = lowest_eigenvalue(fine, opts);
    const GridOperator coarse = assemble_rectangle(t, V, s, std::max(2, n / 2));
    const EigenSolve2D coarse_eig = lowest_eigenvalue(coarse, opts);

    RadialProblem strip;
    strip.d1 = 1;
    strip.s = s;
    strip.mu = mu1_ball(1, V / t);
    strip.R = t / 2.0;

    RectangleSolve out;
    out.lambda1 = fine_eig.lambda1;
    out.coarse_lambda1 = coarse_eig.lambda1;
    out.extrapolated = (4.0 * fine_eig.lambda1 - coarse_eig.lambda1) / 3.0;
    out.decoupled = solve_radial(strip).energy;
    out.grid_h = fine.hx;
    out.interior_count = fine.size();
    out.iterations = fine_eig.outer_iterations;
    return out;
}

double segment_reference(double rho) {
    const double L = 2.0 * std::min(rho, 1.0);
    return std::numbers::pi * std::numbers::pi / (L * L);
}

SweepTable segment_limit_probe(double rho, std::span<const double> s_list, int n, int jobs,
                               const Solver2DOptions& opts) {
    if (!std::is_sorted(s_list.begin(), s_list.end())) throw InvalidProblem("s_list must be increasing");
    std::vector<DiskSolve> solves(s_list.size());
    parallel_for(s_list.size(), jobs, [&](std::size_t i) { solves[i] = solve_disk({rho, s_list[i], n}, opts); });
    SweepTable table;
    table.headers = {"s", "lambda1", "extrapolated", "reference"};
    const double ref = segment_reference(rho);
    for (std::size_t i = 0; i < s_list.size(); ++i) {
        table.add_row({s_list[i], solves[i].lambda1, solves[i].extrapolated, ref});
    }
    return table;
}

}  // namespace grushin
