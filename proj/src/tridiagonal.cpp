#include "grushin/tridiagonal.hpp"

#include "grushin/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace grushin {

std::size_t SymmetricTridiagonal::count_below(double x) const {
    const std::size_t n = diag.size();
    // Exact zero pivots are replaced by -tiny and counted as negative.
    const double tiny = std::numeric_limits<double>::min() * 1e8;
    std::size_t count = 0;
    double pivot = diag[0] - x;
    for (std::size_t i = 0;; ++i) {
        if (std::abs(pivot) < tiny) pivot = -tiny;
        if (pivot < 0.0) ++count;
        if (i + 1 == n) break;
        pivot = (diag[i + 1] - x) - off[i] * off[i] / pivot;
    }
    return count;
}

double SymmetricTridiagonal::inf_norm() const {
    const std::size_t n = diag.size();
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = std::abs(diag[i]);
        if (i > 0) row += std::abs(off[i - 1]);
        if (i + 1 < n) row += std::abs(off[i]);
        norm = std::max(norm, row);
    }
    return norm;
}

double SymmetricTridiagonal::gershgorin_lower() const {
    const std::size_t n = diag.size();
    double lo = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        double radius = 0.0;
        if (i > 0) radius += std::abs(off[i - 1]);
        if (i + 1 < n) radius += std::abs(off[i]);
        lo = std::min(lo, diag[i] - radius);
    }
    return lo;
}

double SymmetricTridiagonal::min_diagonal() const {
    return *std::min_element(diag.begin(), diag.end());
}

void SymmetricTridiagonal::multiply(std::span<const double> x, std::span<double> y) const {
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        double acc = diag[i] * x[i];
        if (i > 0) acc += off[i - 1] * x[i - 1];
        if (i + 1 < n) acc += off[i] * x[i + 1];
        y[i] = acc;
    }
}

void solve_shifted(const SymmetricTridiagonal& t, double shift, std::span<const double> rhs,
                   std::span<double> x) {
    const std::size_t n = t.size();
    const double tiny = std::numeric_limits<double>::min() * 1e8;
    std::vector<double> pivot(n);
    std::vector<double> y(n);
    pivot[0] = t.diag[0] - shift;
    y[0] = rhs[0];
    for (std::size_t i = 1; i < n; ++i) {
        double prev = pivot[i - 1];
        if (std::abs(prev) < tiny) prev = tiny;
        const double l = t.off[i - 1] / prev;
        pivot[i] = (t.diag[i] - shift) - l * t.off[i - 1];
        y[i] = rhs[i] - l * y[i - 1];
    }
    double last = pivot[n - 1];
    if (std::abs(last) < tiny) last = tiny;
    x[n - 1] = y[n - 1] / last;
    for (std::size_t i = n - 1; i-- > 0;) {
        double p = pivot[i];
        if (std::abs(p) < tiny) p = tiny;
        x[i] = (y[i] - t.off[i] * x[i + 1]) / p;
    }
}

namespace {

double normalize_max(std::span<double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    if (m > 0.0 && std::isfinite(m)) {
        for (double& v : x) v /= m;
    }
    return m;
}

}  // namespace

LowestEigenpair lowest_eigenpair(const SymmetricTridiagonal& t, const EigenOptions& opts) {
    const std::size_t n = t.size();
    if (n == 0) throw InvalidProblem("empty tridiagonal matrix");

    LowestEigenpair out;
    double lo = t.gershgorin_lower();
    double hi = t.min_diagonal();
    if (t.count_below(lo) != 0) lo -= std::abs(lo) + 1.0;
    // count_below(lo) == 0 and count_below(hi) >= 1 (or hi is the eigenvalue).
    int steps = 0;
    while (steps < opts.max_bisection) {
        const double width = hi - lo;
        const double scale = std::max(std::abs(lo), std::abs(hi));
        if (width <= opts.bisection_rel_tol * scale * 1e-3 ||
            width <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
            break;
        }
        const double mid = lo + 0.5 * width;
        if (mid <= lo || mid >= hi) break;
        if (t.count_below(mid) == 0) {
            lo = mid;
        } else {
            hi = mid;
        }
        ++steps;
    }
    out.bisection_steps = steps;
    if (hi - lo > opts.bisection_rel_tol * std::max(std::abs(lo), std::abs(hi))) {
        throw NonConvergence("Sturm bisection did not reach the requested width");
    }
    out.bisection_value = 0.5 * (lo + hi);

    // Shift just below the bracket, relative to the eigenvalue.
    const double shift = lo - 1e-8 * std::max(std::abs(lo), std::numeric_limits<double>::min());

    std::vector<double> x(n, 1.0);
    std::vector<double> next(n);
    std::vector<double> tx(n);
    double theta = out.bisection_value;
    double residual = std::numeric_limits<double>::infinity();
    int it = 0;
    for (; it < opts.max_inverse; ++it) {
        solve_shifted(t, shift, x, next);
        normalize_max(next);
        x.swap(next);
        t.multiply(x, tx);
        const double num = std::inner_product(x.begin(), x.end(), tx.begin(), 0.0);
        const double den = std::inner_product(x.begin(), x.end(), x.begin(), 0.0);
        theta = num / den;
        // Residual relative to |T||x|.
        double rmax = 0.0;
        double scale = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            rmax = std::max(rmax, std::abs(tx[i] - theta * x[i]));
            double mag = std::abs(t.diag[i] * x[i]);
            if (i > 0) mag += std::abs(t.off[i - 1] * x[i - 1]);
            if (i + 1 < n) mag += std::abs(t.off[i] * x[i + 1]);
            scale = std::max(scale, mag);
        }
        residual = rmax / scale;
        if (it >= 1 && residual < opts.residual_tol) {
            ++it;
            break;
        }
    }
    out.inverse_steps = it;
    out.relative_residual = residual;
    if (!(residual < opts.residual_tol)) {
        throw NonConvergence("inverse iteration residual did not fall below tolerance");
    }

    double sum = 0.0;
    for (double v : x) sum += v;
    const double sign = sum < 0.0 ? -1.0 : 1.0;
    const double norm2 = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
    for (double& v : x) v = std::max(0.0, sign * v / norm2);
    out.eigenvalue = theta;
    out.vector = std::move(x);
    return out;
}

}  // namespace grushin
