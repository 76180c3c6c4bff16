#pragma once

#include "grushin/radial.hpp"

namespace grushin {

// One instance of the volume-constrained problem on Omega1 x Omega2 with
// Omega1 in R^d1, Omega2 in R^d2 and |Omega1| |Omega2| = V.
struct ProblemParams {
    int d1 = 1;
    int d2 = 1;
    double s = 1.0;
    double V = 1.0;

    void validate() const;  // throws InvalidProblem
};

// Reference-ball data shared by every evaluation at fixed (d1, d2).
struct BallConstants {
    double tau_d1 = 0.0;  // |unit ball| in R^d1
    double tau_d2 = 0.0;
    double mu1_B1 = 0.0;  // first Dirichlet eigenvalue of the unit-volume d1-ball
    double mu1_B2 = 0.0;

    static BallConstants compute(int d1, int d2, int n = kDefaultRadialN);
};

struct LowerBounds {
    double vol_lb = 0.0;     // lower bound on |Omega1*|
    double lambda_lb = 0.0;  // lower bound on the minimal eigenvalue
};

struct MinimizeResult {
    ProblemParams params;
    double sigma_star = 0.0;
    double t_star = 0.0;  // |Omega1*|; |Omega2*| = V / t_star
    double lambda1 = 0.0;
    double F_second = 0.0;
    double vol_lower_bound = 0.0;
    double lambda_lower_bound = 0.0;
    double crit_residual = 0.0;
    double kinetic = 0.0;  // Dirichlet integral of the optimal x1-profile
    int evaluations = 0;
};

// First eigenvalue of -Delta + |x|^(2s) on all of R^d1, by truncation to
// growing balls at fixed spacing until the energy settles to 1e-8 relative.
// Each truncation level is Richardson-extrapolated in h. Requires s > 0.
double whole_space_energy(int d1, double s);

// Evaluates lambda1 of products of balls and locates the optimal volume
// split. Reference-ball constants are computed once at construction; every
// member is const and safe to call concurrently.
class ProductMinimizer {
public:
    explicit ProductMinimizer(const ProblemParams& p, int n = kDefaultRadialN);
    ProductMinimizer(const ProblemParams& p, const BallConstants& constants, int n = kDefaultRadialN);

    const ProblemParams& params() const { return params_; }
    const BallConstants& constants() const { return constants_; }
    int grid_n() const { return n_; }

    // Radius of the unit-volume d1-ball.
    double ball_radius() const;
    // d2 / (d1 + (1 + s) d2), the power of sigma removed in F.
    double kappa() const;
    // 2/d1 + 2/d2 + 2s/d1.
    double sigma_exponent() const;

    double sigma_of_t(double t) const;
    double t_of_sigma(double sigma) const;

    // E1(sigma, B1): unit-volume ball, coupling sigma.
    RadialProblem ball_problem(double sigma) const;
    // The same eigenvalue family in physical variables: a centered ball of
    // volume t with coupling mu1(Omega2) = mu1(B2) (t / V)^(2/d2). Its energy
    // is G_s(t) and equals t^(-2/d1) E1(sigma(t), B1) exactly on the scaled grid.
    RadialProblem physical_problem(double t) const;
    RadialSolution solve_ball(double sigma) const;

    // G_s(t): lambda1 of a centered d1-ball of volume t times a d2-ball of
    // volume V / t, evaluated through physical_problem.
    double lambda1_product(double t) const;
    double F_value(double sigma) const;
    // Uses the Hellmann-Feynman derivative, no differencing of the energy.
    double F_derivative(double sigma) const;

    double volume_lower_bound() const;
    double eigenvalue_lower_bound() const;  // solves the whole-space problem
    LowerBounds lower_bounds() const;

    MinimizeResult minimize() const;

private:
    ProblemParams params_;
    BallConstants constants_;
    int n_;
};

}  // namespace grushin
