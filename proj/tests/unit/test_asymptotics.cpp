#include "grushin/asymptotics.hpp"
#include "grushin/errors.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace grushin;

namespace {

constexpr double pi = std::numbers::pi;

ProblemParams planar(double s = 1.0) {
    ProblemParams p;
    p.s = s;
    return p;
}

}  // namespace

TEST_CASE("G0 closed forms in the plane") {
    const auto p = planar();
    const auto c = BallConstants::compute(1, 1);
    CHECK(G0_value(p, c, 1.0) == doctest::Approx(2 * pi * pi).epsilon(1e-6));
    CHECK(G0_value(p, 1.0) == doctest::Approx(2 * pi * pi).epsilon(1e-6));
    CHECK(G0_argmin(p, c) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(G0_minimum(p, c) == doctest::Approx(2 * pi * pi).epsilon(1e-6));
}

TEST_CASE("G0 minimum formula agrees with a direct scan") {
    ProblemParams p;
    p.d1 = 2;
    p.d2 = 3;
    p.V = 1.7;
    const auto c = BallConstants::compute(2, 3);
    const double t_star = G0_argmin(p, c);
    CHECK(G0_value(p, c, t_star) == doctest::Approx(G0_minimum(p, c)).epsilon(1e-12));
    for (double f : {0.9, 0.99, 1.01, 1.1}) CHECK(G0_value(p, c, f * t_star) > G0_minimum(p, c));
}

TEST_CASE("Ginf branches") {
    CHECK(Ginf_value(1, 3.0) == doctest::Approx(pi * pi / 4).epsilon(1e-6));
    CHECK(Ginf_value(1, 1.0) == doctest::Approx(pi * pi).epsilon(1e-6));
    CHECK(Ginf_value(1, 2.0) == doctest::Approx(Ginf_value(1, 2.0 - 1e-12)).epsilon(1e-9));
    CHECK(Ginf_value(2, pi) == doctest::Approx(mu1_ball(2, 1.0) / pi).epsilon(1e-12));
    const double j = oracle::j01();
    CHECK(Ginf_value(2, pi) == doctest::Approx(j * j).epsilon(1e-6));
}

TEST_CASE("limit profile for s to infinity is flat past tau") {
    const auto c = BallConstants::compute(1, 1);
    const auto prof = limit_profile(LimitKind::S_TO_INFINITY, planar(), c, {0.5, 1.0, 2.0, 2.5, 4.0});
    REQUIRE(prof.values.size() == 5);
    CHECK(prof.values[2] == prof.values[3]);
    CHECK(prof.values[3] == prof.values[4]);
    for (double v : prof.values) CHECK(v > 0.0);
}

TEST_CASE("whole-space limit") {
    CHECK(whole_space_limit(1, 1.0) == doctest::Approx(1.0).epsilon(1e-4));

    // Independent full-line oracle at a large exponent.
    const double e50 = whole_space_limit(1, 50.0);
    CHECK(e50 == doctest::Approx(oracle::full_line_energy_extrapolated(50.0, 1.0, 1.5, 8000)).epsilon(1e-6));

    // Approach toward mu1(B(0,1)) = pi^2/4 from below.
    double prev = 0.0;
    for (double s : {5.0, 20.0, 50.0, 150.0, 500.0}) {
        const double e = whole_space_limit(1, s);
        CHECK(e < pi * pi / 4);
        CHECK(e > prev);
        prev = e;
    }
}

TEST_CASE("sandwich upper bound") {
    const double mu_ball = pi * pi / 4;
    for (double s : {0.5, 2.0, 10.0, 50.0}) {
        const double e = whole_space_limit(1, s);
        for (double h : {0.05, 0.1, 0.3, 0.6, 0.9}) {
            CHECK(e <= mu_ball / ((1 - h) * (1 - h)) + std::pow(1 - h, 2 * s));
        }
    }
}

TEST_CASE("deviation from G0 shrinks as s decreases") {
    const auto grid = linear_grid(0.25, 4.0, 20);
    const std::vector<double> ladder{0.1, 0.01, 0.001};
    const auto rep = convergence_report(planar(), LimitKind::S_TO_ZERO, ladder, grid);
    CHECK(rep.monotone());
    CHECK(rep.table.rows.size() == 60);
    CHECK(rep.table.headers == std::vector<std::string>{"s", "t", "G_s", "G_limit", "abs_dev"});
    CHECK(rep.deviations.back().max_abs_dev < rep.deviations.front().max_abs_dev);
}

TEST_CASE("deviation from Ginf shrinks as s increases") {
    const auto grid = linear_grid(2.2, 4.0, 10);
    const auto rep = convergence_report(planar(), LimitKind::S_TO_INFINITY, kLargeSLadder, grid, 2);
    CHECK(rep.monotone());
}

TEST_CASE("G_150 at t = 3 agrees with a full-line oracle") {
    const ProductMinimizer m(planar(150.0));
    const double g = m.lambda1_product(3.0);
    CHECK(g == doctest::Approx(oracle::full_line_energy_extrapolated(150.0, 9 * pi * pi, 1.5, 8000)).epsilon(1e-6));
    CHECK(g < pi * pi / 4);
}

TEST_CASE("argmin of G_s approaches the s = 0 optimum") {
    const auto grid = linear_grid(0.5, 2.0, 61);
    double prev_err = 1e300;
    for (double s : {0.1, 0.01, 0.001}) {
        const ProductMinimizer m(planar(s));
        std::size_t best = 0;
        double best_val = 1e300;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double g = m.lambda1_product(grid[i]);
            if (g < best_val) best_val = g, best = i;
        }
        const double err = std::abs(grid[best] - 1.0);
        CHECK(err <= prev_err);
        prev_err = err;
    }
    CHECK(prev_err <= 0.025 + 1e-12);
}

TEST_CASE("envelopes around G_s") {
    const auto c = BallConstants::compute(1, 1);
    const double e_cache[] = {whole_space_energy(1, 0.5), whole_space_energy(1, 1.0), whole_space_energy(1, 3.0)};
    const double s_values[] = {0.5, 1.0, 3.0};
    for (int k = 0; k < 3; ++k) {
        const double s = s_values[k];
        const ProductMinimizer m(planar(s), c);
        for (double t : {0.5, 1.0, 2.0, 2.5, 4.0}) {
            const double g = m.lambda1_product(t);
            const double sigma = m.sigma_of_t(t);
            const double upper = std::pow(t, -2.0) * (c.mu1_B1 + sigma * std::pow(c.tau_d1, -2.0 * s));
            CHECK(g <= upper);
            if (t >= c.tau_d1) {
                CHECK(g >= std::pow(sigma, 1.0 / (s + 1)) * e_cache[k] * std::pow(t, -2.0) * (1 - 1e-6));
            }
        }
    }
}

TEST_CASE("convergence report rejects unsorted ladders") {
    const std::vector<double> grid{1.0};
    const std::vector<double> bad{0.1, 0.001, 0.01};
    CHECK_THROWS_AS(convergence_report(planar(), LimitKind::S_TO_ZERO, bad, grid), InvalidProblem);
}
