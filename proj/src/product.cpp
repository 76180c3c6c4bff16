#include "grushin/product.hpp"

#include "grushin/errors.hpp"

#include <cmath>
#include <sstream>

namespace grushin {

void ProblemParams::validate() const {
    std::ostringstream why;
    if (d1 < 1) why << "d1 must be >= 1 (got " << d1 << "); ";
    if (d2 < 1) why << "d2 must be >= 1 (got " << d2 << "); ";
    if (!(s > 0.0) || !std::isfinite(s)) why << "s must be > 0 (got " << s << "); ";
    if (!(V > 0.0) || !std::isfinite(V)) why << "V must be > 0 (got " << V << "); ";
    const std::string msg = why.str();
    if (!msg.empty()) throw InvalidProblem("invalid problem parameters: " + msg);
}

BallConstants BallConstants::compute(int d1, int d2, int n) {
    BallConstants c;
    c.tau_d1 = unit_ball_volume(d1);
    c.tau_d2 = unit_ball_volume(d2);
    c.mu1_B1 = mu1_ball(d1, 1.0, n);
    c.mu1_B2 = d2 == d1 ? c.mu1_B1 : mu1_ball(d2, 1.0, n);
    return c;
}

double whole_space_energy(int d1, double s) {
    if (d1 < 1) throw InvalidProblem("whole_space_energy requires d1 >= 1");
    if (!(s > 0.0)) throw InvalidProblem("whole_space_energy requires s > 0");
    // Decay length of the ground state; the log-like potential at small s
    // spreads it over ~ s^(-1/2), large s puts a wall of width ~ 1/s at r = 1.
    const double length = std::max(1.0, 1.0 / std::sqrt(s));
    const double h = std::min(length / 1024.0, 1.0 / (16.0 * s));
    double radius = length * (s >= 2.0 ? 2.0 : 8.0);

    double previous = 0.0;
    for (int level = 0; level < 40; ++level) {
        RadialProblem p;
        p.d1 = d1;
        p.s = s;
        p.mu = 1.0;
        p.n = std::max(16, static_cast<int>(std::ceil(radius / h)));
        p.R = p.n * h;
        const double energy = richardson_energy(p).extrapolated;
        if (level > 0 && std::abs(previous - energy) < 1e-8 * std::abs(energy)) return energy;
        previous = energy;
        radius *= 1.5;
    }
    throw NonConvergence("whole-space truncation did not settle");
}

ProductMinimizer::ProductMinimizer(const ProblemParams& p, int n)
    : params_(p), n_(n) {
    params_.validate();
    constants_ = BallConstants::compute(p.d1, p.d2, n);
}

ProductMinimizer::ProductMinimizer(const ProblemParams& p, const BallConstants& constants, int n)
    : params_(p), constants_(constants), n_(n) {
    params_.validate();
}

double ProductMinimizer::ball_radius() const {
    return std::pow(constants_.tau_d1, -1.0 / params_.d1);
}

double ProductMinimizer::kappa() const {
    const auto& p = params_;
    return p.d2 / (p.d1 + (1.0 + p.s) * p.d2);
}

double ProductMinimizer::sigma_exponent() const {
    const auto& p = params_;
    return 2.0 / p.d1 + 2.0 / p.d2 + 2.0 * p.s / p.d1;
}

double ProductMinimizer::sigma_of_t(double t) const {
    if (!(t > 0.0)) throw InvalidProblem("volume t must be positive");
    const auto& p = params_;
    const double log_sigma = std::log(constants_.mu1_B2) - (2.0 / p.d2) * std::log(p.V) +
                             sigma_exponent() * std::log(t);
    return std::exp(log_sigma);
}

double ProductMinimizer::t_of_sigma(double sigma) const {
    if (!(sigma > 0.0)) throw InvalidProblem("sigma must be positive");
    const auto& p = params_;
    const double log_c = std::log(constants_.mu1_B2) - (2.0 / p.d2) * std::log(p.V);
    return std::exp((std::log(sigma) - log_c) / sigma_exponent());
}

RadialProblem ProductMinimizer::ball_problem(double sigma) const {
    RadialProblem rp;
    rp.d1 = params_.d1;
    rp.s = params_.s;
    rp.mu = sigma;
    rp.R = ball_radius();
    rp.n = n_;
    return rp;
}

RadialProblem ProductMinimizer::physical_problem(double t) const {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidProblem("volume t must be positive and finite");
    const auto& p = params_;
    RadialProblem rp;
    rp.d1 = p.d1;
    rp.s = p.s;
    rp.mu = constants_.mu1_B2 * std::pow(t / p.V, 2.0 / p.d2);
    rp.R = std::pow(t / constants_.tau_d1, 1.0 / p.d1);
    rp.n = n_;
    return rp;
}

RadialSolution ProductMinimizer::solve_ball(double sigma) const {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) throw InvalidProblem("sigma must be positive and finite");
    return solve_radial(ball_problem(sigma));
}

double ProductMinimizer::lambda1_product(double t) const {
    return solve_radial(physical_problem(t)).energy;
}

double ProductMinimizer::F_value(double sigma) const {
    return std::pow(sigma, -kappa()) * solve_ball(sigma).energy;
}

double ProductMinimizer::F_derivative(double sigma) const {
    const RadialSolution sol = solve_ball(sigma);
    const double k = kappa();
    return std::pow(sigma, -k - 1.0) * (-k * sol.energy + sigma * sol.hf_derivative);
}

namespace {

// log of tau^(2s/d1) (d2 / (d1 + s d2)) mu1(B1) / mu1(B2).
double log_bound_factor(const ProblemParams& p, const BallConstants& c) {
    return (2.0 * p.s / p.d1) * std::log(c.tau_d1) + std::log(p.d2 / (p.d1 + p.s * p.d2)) +
           std::log(c.mu1_B1 / c.mu1_B2);
}

}  // namespace

double ProductMinimizer::volume_lower_bound() const {
    const auto& p = params_;
    const double denom = p.d1 + (1.0 + p.s) * p.d2;
    const double log_base = log_bound_factor(p, constants_) + (2.0 / p.d2) * std::log(p.V);
    return std::exp(log_base * p.d1 * p.d2 / (2.0 * denom));
}

double ProductMinimizer::eigenvalue_lower_bound() const {
    const auto& p = params_;
    const auto& c = constants_;
    const double denom = p.d1 + (1.0 + p.s) * p.d2;
    const double log_value = std::log(c.mu1_B2) / (p.s + 1.0) - (2.0 / denom) * std::log(p.V) +
                             log_bound_factor(p, c) * p.d1 / ((p.s + 1.0) * denom);
    return std::exp(log_value) * whole_space_energy(p.d1, p.s);
}

LowerBounds ProductMinimizer::lower_bounds() const {
    return {volume_lower_bound(), eigenvalue_lower_bound()};
}

MinimizeResult ProductMinimizer::minimize() const {
    const auto& p = params_;
    MinimizeResult out;
    out.params = p;
    int evals = 0;
    const double k = kappa();
    const double alpha = sigma_exponent();
    // sign(F'(sigma(t))) == sign(-kappa E + mu P) on the volume-t ball, a
    // form that stays finite when sigma itself would overflow.
    auto indicator = [&](double t) {
        ++evals;
        const RadialProblem rp = physical_problem(t);
        const RadialSolution sol = solve_radial(rp);
        return (-k * sol.energy + rp.mu * sol.hf_derivative) / sol.energy;
    };

    const double t_lb = volume_lower_bound();
    const double t_min = 1e-12 * t_lb;
    const double t_max = 1e12 * t_lb;
    // A factor 4 in sigma, but at least 25% in t when sigma ~ t^alpha is steep.
    const double factor = std::max(std::pow(4.0, 1.0 / alpha), 1.25);

    double lo = t_lb;
    while (indicator(lo) >= 0.0) {
        lo /= factor;
        if (lo < t_min) throw BracketFailure("no volume split with F' < 0 in the search window");
    }
    double hi = lo * factor;
    while (indicator(hi) <= 0.0) {
        lo = hi;
        hi *= factor;
        if (hi > t_max) throw BracketFailure("no volume split with F' > 0 in the search window");
    }
    // Relative width 1e-10 in sigma is 1e-10 / alpha in t.
    while ((hi - lo) > 1e-10 / alpha * lo) {
        const double mid = std::sqrt(lo * hi);
        if (mid <= lo || mid >= hi) break;
        if (indicator(mid) < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    out.t_star = std::sqrt(lo * hi);
    out.sigma_star = sigma_of_t(out.t_star);
    const double sigma_star = out.sigma_star;

    // F'' by central differences of F', halving the step while the estimate
    // is not clearly separated from its own difference error.
    auto second = [&](double rel_step) {
        const double step = sigma_star * rel_step;
        evals += 2;
        return (F_derivative(sigma_star + step) - F_derivative(sigma_star - step)) / (2.0 * step);
    };
    double rel_step = 1e-4;
    double f2 = second(rel_step);
    for (int i = 0; i < 4; ++i) {
        const double refined = second(0.5 * rel_step);
        const double err = std::abs(refined - f2);
        f2 = refined;
        rel_step *= 0.5;
        if (std::abs(f2) > 10.0 * err) break;
    }
    out.F_second = f2;

    // Integrals on the unit-volume ball B1 are t^(2/d1) times those on the
    // volume-t ball.
    const RadialProblem rp = physical_problem(out.t_star);
    const RadialSolution sol = solve_radial(rp);
    ++evals;
    const double to_unit = std::pow(out.t_star, 2.0 / p.d1);
    out.lambda1 = sol.energy;
    out.kinetic = to_unit * sol.kinetic;
    out.crit_residual = to_unit * (sol.kinetic - ((p.d1 + p.s * p.d2) / static_cast<double>(p.d2)) *
                                                     rp.mu * sol.hf_derivative);
    const LowerBounds lb = lower_bounds();
    out.vol_lower_bound = lb.vol_lb;
    out.lambda_lower_bound = lb.lambda_lb;
    out.evaluations = evals;
    return out;
}

}  // namespace grushin
