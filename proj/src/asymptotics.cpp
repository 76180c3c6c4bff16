#include "grushin/asymptotics.hpp"

#include "grushin/errors.hpp"
#include "grushin/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace grushin {

const char* limit_name(LimitKind kind) {
    return kind == LimitKind::S_TO_ZERO ? "s_to_zero" : "s_to_infinity";
}

double G0_value(const ProblemParams& p, const BallConstants& c, double t) {
    if (!(t > 0.0)) throw InvalidProblem("G0 requires t > 0");
    return std::pow(t, -2.0 / p.d1) * c.mu1_B1 + std::pow(t / p.V, 2.0 / p.d2) * c.mu1_B2;
}

double G0_value(const ProblemParams& p, double t) {
    return G0_value(p, BallConstants::compute(p.d1, p.d2), t);
}

double G0_argmin(const ProblemParams& p, const BallConstants& c) {
    const double d = p.d1 + p.d2;
    const double ratio = p.d2 * c.mu1_B1 / (p.d1 * c.mu1_B2);
    return std::pow(ratio, p.d1 * p.d2 / (2.0 * d)) * std::pow(p.V, p.d1 / d);
}

double G0_minimum(const ProblemParams& p, const BallConstants& c) {
    const double d = p.d1 + p.d2;
    const double ratio = p.d1 * c.mu1_B2 / (p.d2 * c.mu1_B1);
    return std::pow(p.V, -2.0 / d) * (d / p.d1) * c.mu1_B1 * std::pow(ratio, p.d2 / d);
}

double Ginf_value(int d1, double t, double mu1_B1) {
    if (!(t > 0.0)) throw InvalidProblem("Ginf requires t > 0");
    const double tau = unit_ball_volume(d1);
    return mu1_B1 / std::pow(std::min(t, tau), 2.0 / d1);
}

double Ginf_value(int d1, double t) {
    return Ginf_value(d1, t, mu1_ball(d1, 1.0));
}

double limit_value(LimitKind kind, const ProblemParams& p, const BallConstants& c, double t) {
    return kind == LimitKind::S_TO_ZERO ? G0_value(p, c, t) : Ginf_value(p.d1, t, c.mu1_B1);
}

LimitProfile limit_profile(LimitKind kind, const ProblemParams& p, const BallConstants& c,
                           std::vector<double> t_grid) {
    LimitProfile profile;
    profile.kind = kind;
    profile.params = p;
    profile.t_grid = std::move(t_grid);
    profile.values.reserve(profile.t_grid.size());
    for (double t : profile.t_grid) profile.values.push_back(limit_value(kind, p, c, t));
    return profile;
}

double whole_space_limit(int d1, double s) {
    return whole_space_energy(d1, s);
}

bool ConvergenceReport::monotone() const {
    if (deviations.size() < 2) return true;
    auto ordered = deviations;
    // Walk from far to near the limit end.
    std::sort(ordered.begin(), ordered.end(), [&](const LimitDeviation& a, const LimitDeviation& b) {
        return kind == LimitKind::S_TO_ZERO ? a.s > b.s : a.s < b.s;
    });
    for (std::size_t i = 1; i < ordered.size(); ++i) {
        if (!(ordered[i].max_abs_dev < ordered[i - 1].max_abs_dev)) return false;
    }
    return true;
}

std::vector<double> linear_grid(double a, double b, int count) {
    if (count < 1) return {};
    if (count == 1) return {a};
    std::vector<double> g(count);
    for (int i = 0; i < count; ++i) g[i] = a + (b - a) * i / (count - 1);
    return g;
}

ConvergenceReport convergence_report(const ProblemParams& p, LimitKind kind, std::span<const double> s_list,
                                     std::span<const double> t_grid, int jobs, int n) {
    const bool ascending = std::is_sorted(s_list.begin(), s_list.end());
    const bool descending = std::is_sorted(s_list.begin(), s_list.end(), std::greater<>());
    if (!ascending && !descending) throw InvalidProblem("s_list must be sorted");
    for (double t : t_grid) {
        if (!(t > 0.0)) throw InvalidProblem("t grid entries must be positive");
    }

    const BallConstants c = BallConstants::compute(p.d1, p.d2, n);
    std::vector<double> limit(t_grid.size());
    for (std::size_t j = 0; j < t_grid.size(); ++j) limit[j] = limit_value(kind, p, c, t_grid[j]);

    std::vector<std::vector<double>> values(s_list.size(), std::vector<double>(t_grid.size()));
    parallel_for(s_list.size(), jobs, [&](std::size_t i) {
        ProblemParams q = p;
        q.s = s_list[i];
        const ProductMinimizer m(q, c, n);
        for (std::size_t j = 0; j < t_grid.size(); ++j) values[i][j] = m.lambda1_product(t_grid[j]);
    });

    ConvergenceReport report;
    report.kind = kind;
    report.table.headers = {"s", "t", "G_s", "G_limit", "abs_dev"};
    for (std::size_t i = 0; i < s_list.size(); ++i) {
        double worst = 0.0;
        for (std::size_t j = 0; j < t_grid.size(); ++j) {
            const double dev = std::abs(values[i][j] - limit[j]);
            worst = std::max(worst, dev);
            report.table.add_row({s_list[i], t_grid[j], values[i][j], limit[j], dev});
        }
        report.deviations.push_back({s_list[i], worst});
    }
    return report;
}

}  // namespace grushin
