#pragma once

#include "grushin/tridiagonal.hpp"

#include <string>
#include <vector>

namespace grushin {

inline constexpr int kDefaultRadialN = 4096;

// Potentials mu * r^(2s) are clamped here.
inline constexpr double kPotentialCap = 1e200;

// -v'' - ((d1-1)/r) v' + mu r^(2s) v = E v on (0, R), v(R) = 0, regular at 0.
struct RadialProblem {
    int d1 = 1;
    double s = 1.0;
    double mu = 0.0;
    double R = 1.0;
    int n = kDefaultRadialN;  // grid intervals, r_i = i R / n

    void validate() const;  // throws InvalidProblem
    double h() const { return R / n; }
};

struct RadialSolution {
    double energy = 0.0;
    std::vector<double> v;  // n + 1 samples, v[n] == 0, v >= 0
    double boundary_slope = 0.0;
    double hf_derivative = 0.0;
    double kinetic = 0.0;  // discrete Dirichlet form, energy = kinetic + mu * hf_derivative
    std::string norm_weight;
    int bisection_steps = 0;
    int inverse_steps = 0;
};

// Conservative discretization of -(r^(d1-1) v')' + mu r^(2s+d1-1) v against
// the cell masses of the control volumes around each node.
struct RadialPencil {
    std::vector<double> stiffness_diag;  // n entries, unknowns v_0 .. v_{n-1}
    std::vector<double> stiffness_off;   // n - 1 entries
    std::vector<double> mass;            // n entries, all positive
};

RadialPencil assemble_pencil(const RadialProblem& p);

// Weights for integrals of (samples) * r^(d1-1) over [0, R]: trapezoidal
// on the uniform grid, with the origin node carrying its exact control
// volume (h/2)^d1 / d1. n + 1 entries.
std::vector<double> quadrature_weights(const RadialProblem& p);

// r^(2s) on the grid, clamped at kPotentialCap; 0^0 == 1.
std::vector<double> radial_power(const RadialProblem& p);

RadialSolution solve_radial(const RadialProblem& p, const EigenOptions& opts = {});

// Solves at n and 2n and combines them assuming an O(h^2) leading error.
struct RichardsonEstimate {
    double coarse = 0.0;
    double fine = 0.0;
    double extrapolated = 0.0;
};
RichardsonEstimate richardson_energy(const RadialProblem& p, const EigenOptions& opts = {});

// Volume of the unit ball in R^d, pi^(d/2) / Gamma(1 + d/2).
double unit_ball_volume(int d);

// First Dirichlet-Laplacian eigenvalue of the d-ball with the given volume.
double mu1_ball(int d, double volume, int n = kDefaultRadialN);

// Integral of r^(2s + d1 - 1) v^2, the mu-derivative of the energy.
double hf_derivative(const RadialSolution& sol, const RadialProblem& p);

struct IdentityResiduals {
    double res1 = 0.0;  // energy balance
    double res2 = 0.0;  // Pohozaev-type identity
    double res3 = 0.0;  // differential identity in mu
};

// Residuals of the three integral/differential identities, using pointwise
// central differences for v' and the module quadrature.
IdentityResiduals identity_residuals(const RadialSolution& sol, const RadialProblem& p);

// s * dE/dmu + mu (1 + s) d2E/dmu2, the second term by a central difference
// of hf_derivative at mu +- h. h <= 0 selects mu * 1e-3. Requires mu > 0.
double second_derivative_sign(const RadialProblem& p, double h = 0.0, const EigenOptions& opts = {});

}  // namespace grushin
