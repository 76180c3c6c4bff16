#include "grushin/radial.hpp"

#include "grushin/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace grushin {

void RadialProblem::validate() const {
    std::ostringstream why;
    if (d1 < 1) why << "d1 must be >= 1 (got " << d1 << "); ";
    if (!(R > 0.0) || !std::isfinite(R)) why << "R must be positive (got " << R << "); ";
    if (n < 16) why << "n must be >= 16 (got " << n << "); ";
    if (!(mu >= 0.0) || !std::isfinite(mu)) why << "mu must be >= 0 (got " << mu << "); ";
    if (!(s >= 0.0) || !std::isfinite(s)) why << "s must be >= 0 (got " << s << "); ";
    const std::string msg = why.str();
    if (!msg.empty()) throw InvalidProblem("invalid radial problem: " + msg);
}

namespace {

double clamped_power(double r, double exponent) {
    if (exponent == 0.0) return 1.0;
    if (r <= 0.0) return 0.0;
    const double log_value = exponent * std::log(r);
    if (log_value > std::log(kPotentialCap)) return kPotentialCap;
    return std::exp(log_value);
}

}  // namespace

std::vector<double> radial_power(const RadialProblem& p) {
    std::vector<double> out(p.n + 1);
    const double h = p.h();
    for (int i = 0; i <= p.n; ++i) out[i] = clamped_power(i * h, 2.0 * p.s);
    return out;
}

std::vector<double> quadrature_weights(const RadialProblem& p) {
    const double h = p.h();
    const int d = p.d1;
    std::vector<double> w(p.n + 1);
    w[0] = std::pow(0.5 * h, d) / d;
    for (int i = 1; i < p.n; ++i) w[i] = h * std::pow(i * h, d - 1);
    w[p.n] = 0.5 * h * std::pow(p.R, d - 1);
    return w;
}

RadialPencil assemble_pencil(const RadialProblem& p) {
    p.validate();
    const int n = p.n;
    const double h = p.h();
    const int d = p.d1;
    const std::vector<double> w = quadrature_weights(p);
    const std::vector<double> power = radial_power(p);

    RadialPencil pencil;
    pencil.stiffness_diag.assign(n, 0.0);
    pencil.stiffness_off.assign(n - 1, 0.0);
    pencil.mass.assign(w.begin(), w.begin() + n);
    for (int i = 0; i < n; ++i) {
        const double flux_right = std::pow((i + 0.5) * h, d - 1) / h;
        const double flux_left = i > 0 ? std::pow((i - 0.5) * h, d - 1) / h : 0.0;
        const double potential = std::min(p.mu * power[i], kPotentialCap);
        pencil.stiffness_diag[i] = flux_left + flux_right + pencil.mass[i] * potential;
        if (i + 1 < n) pencil.stiffness_off[i] = -flux_right;
    }
    return pencil;
}

RadialSolution solve_radial(const RadialProblem& p, const EigenOptions& opts) {
    const RadialPencil pencil = assemble_pencil(p);
    const int n = p.n;
    const double h = p.h();
    const int d = p.d1;

    // Congruence D^{-1/2} A D^{-1/2} to standard form.
    SymmetricTridiagonal t;
    t.diag.resize(n);
    t.off.resize(n - 1);
    std::vector<double> inv_sqrt_mass(n);
    for (int i = 0; i < n; ++i) inv_sqrt_mass[i] = 1.0 / std::sqrt(pencil.mass[i]);
    for (int i = 0; i < n; ++i) {
        t.diag[i] = pencil.stiffness_diag[i] * inv_sqrt_mass[i] * inv_sqrt_mass[i];
        if (i + 1 < n) t.off[i] = pencil.stiffness_off[i] * inv_sqrt_mass[i] * inv_sqrt_mass[i + 1];
    }

    const LowestEigenpair pair = lowest_eigenpair(t, opts);

    RadialSolution sol;
    sol.bisection_steps = pair.bisection_steps;
    sol.inverse_steps = pair.inverse_steps;
    sol.v.assign(n + 1, 0.0);
    for (int i = 0; i < n; ++i) sol.v[i] = pair.vector[i] * inv_sqrt_mass[i];

    const std::vector<double> w = quadrature_weights(p);
    const std::vector<double> power = radial_power(p);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += w[i] * sol.v[i] * sol.v[i];
    const double scale = 1.0 / std::sqrt(norm);
    for (double& v : sol.v) v *= scale;

    // Energy as the Rayleigh quotient in flux form.
    double kinetic = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dv = sol.v[i + 1] - sol.v[i];
        kinetic += std::pow((i + 0.5) * h, d - 1) / h * dv * dv;
    }
    double weighted = 0.0;
    for (int i = 0; i < n; ++i) weighted += w[i] * power[i] * sol.v[i] * sol.v[i];
    double potential = 0.0;
    for (int i = 0; i < n; ++i) {
        potential += w[i] * std::min(p.mu * power[i], kPotentialCap) * sol.v[i] * sol.v[i];
    }

    sol.kinetic = kinetic;
    sol.energy = kinetic + potential;
    sol.hf_derivative = weighted;
    sol.boundary_slope = (-4.0 * sol.v[n - 1] + sol.v[n - 2]) / (2.0 * h);
    sol.norm_weight =
        "trapezoidal weights h*r_i^(d1-1); origin node weighted by its control volume (h/2)^d1/d1";
    return sol;
}

RichardsonEstimate richardson_energy(const RadialProblem& p, const EigenOptions& opts) {
    RadialProblem fine = p;
    fine.n = 2 * p.n;
    RichardsonEstimate est;
    est.coarse = solve_radial(p, opts).energy;
    est.fine = solve_radial(fine, opts).energy;
    est.extrapolated = (4.0 * est.fine - est.coarse) / 3.0;
    return est;
}

double unit_ball_volume(int d) {
    if (d < 1) throw InvalidProblem("dimension must be >= 1");
    return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(1.0 + 0.5 * d);
}

double mu1_ball(int d, double volume, int n) {
    if (d < 1 || !(volume > 0.0)) throw InvalidProblem("mu1_ball requires d >= 1 and volume > 0");
    RadialProblem p;
    p.d1 = d;
    p.s = 0.0;
    p.mu = 0.0;
    p.R = std::pow(volume / unit_ball_volume(d), 1.0 / d);
    p.n = n;
    return solve_radial(p).energy;
}

double hf_derivative(const RadialSolution& sol, const RadialProblem& p) {
    p.validate();
    if (sol.v.size() != static_cast<std::size_t>(p.n) + 1) {
        throw InvalidProblem("solution does not match the problem grid");
    }
    const std::vector<double> w = quadrature_weights(p);
    const std::vector<double> power = radial_power(p);
    double acc = 0.0;
    for (int i = 0; i <= p.n; ++i) acc += w[i] * power[i] * sol.v[i] * sol.v[i];
    return acc;
}

IdentityResiduals identity_residuals(const RadialSolution& sol, const RadialProblem& p) {
    p.validate();
    const int n = p.n;
    const double h = p.h();
    const std::vector<double> w = quadrature_weights(p);
    const std::vector<double>& v = sol.v;

    double kinetic = 0.0;
    for (int i = 1; i < n; ++i) {
        const double dv = (v[i + 1] - v[i - 1]) / (2.0 * h);
        kinetic += w[i] * dv * dv;
    }
    kinetic += w[n] * sol.boundary_slope * sol.boundary_slope;

    const double weighted = hf_derivative(sol, p);
    const double boundary = 0.5 * std::pow(p.R, p.d1) * sol.boundary_slope * sol.boundary_slope;

    IdentityResiduals res;
    res.res1 = std::abs(kinetic + p.mu * weighted - sol.energy);
    res.res2 = std::abs(kinetic - boundary - p.s * p.mu * weighted);
    res.res3 = std::abs(sol.energy - boundary - p.mu * (1.0 + p.s) * sol.hf_derivative);
    return res;
}

double second_derivative_sign(const RadialProblem& p, double h, const EigenOptions& opts) {
    p.validate();
    if (!(p.mu > 0.0)) throw InvalidProblem("second_derivative_sign requires mu > 0");
    if (!(h > 0.0)) h = p.mu * 1e-3;
    if (h >= p.mu) throw InvalidProblem("finite-difference step must be smaller than mu");
    RadialProblem lo = p;
    RadialProblem hi = p;
    lo.mu = p.mu - h;
    hi.mu = p.mu + h;
    const double derivative = solve_radial(p, opts).hf_derivative;
    const double second = (solve_radial(hi, opts).hf_derivative - solve_radial(lo, opts).hf_derivative) / (2.0 * h);
    return p.s * derivative + p.mu * (1.0 + p.s) * second;
}

}  // namespace grushin
