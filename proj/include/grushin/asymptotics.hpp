#pragma once

#include "grushin/product.hpp"
#include "grushin/table.hpp"

#include <span>
#include <vector>

namespace grushin {

enum class LimitKind { S_TO_ZERO, S_TO_INFINITY };

const char* limit_name(LimitKind kind);

// A limit function sampled on a t grid. params.s is ignored.
struct LimitProfile {
    LimitKind kind = LimitKind::S_TO_ZERO;
    ProblemParams params;
    std::vector<double> t_grid;
    std::vector<double> values;
};

// Limit of G_s as s -> 0: t^(-2/d1) mu1(B1) + t^(2/d2) V^(-2/d2) mu1(B2).
double G0_value(const ProblemParams& p, const BallConstants& c, double t);
double G0_value(const ProblemParams& p, double t);
double G0_argmin(const ProblemParams& p, const BallConstants& c);
double G0_minimum(const ProblemParams& p, const BallConstants& c);

// Limit of G_s as s -> infinity: mu1(B1) t^(-2/d1), frozen at t = tau_d1.
double Ginf_value(int d1, double t, double mu1_B1);
double Ginf_value(int d1, double t);

double limit_value(LimitKind kind, const ProblemParams& p, const BallConstants& c, double t);
LimitProfile limit_profile(LimitKind kind, const ProblemParams& p, const BallConstants& c,
                           std::vector<double> t_grid);

// E1(1, R^d1) for the potential |x|^(2s).
double whole_space_limit(int d1, double s);

inline const std::vector<double> kSmallSLadder{1e-3, 1e-2, 1e-1};
inline const std::vector<double> kLargeSLadder{10.0, 50.0, 150.0};

struct LimitDeviation {
    double s = 0.0;
    double max_abs_dev = 0.0;
};

struct ConvergenceReport {
    LimitKind kind = LimitKind::S_TO_ZERO;
    SweepTable table;  // s, t, G_s, G_limit, abs_dev
    std::vector<LimitDeviation> deviations;

    // Deviations shrink as s moves toward the limit end of the ladder.
    bool monotone() const;
};

std::vector<double> linear_grid(double a, double b, int count);

// Samples G_s on t_grid for every s in s_list (sorted either way) and
// compares against the chosen limit. jobs > 1 evaluates s values in parallel.
ConvergenceReport convergence_report(const ProblemParams& p, LimitKind kind, std::span<const double> s_list,
                                     std::span<const double> t_grid, int jobs = 1,
                                     int n = kDefaultRadialN);

}  // namespace grushin
