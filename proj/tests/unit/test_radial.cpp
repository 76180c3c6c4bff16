#include "grushin/errors.hpp"
#include "grushin/radial.hpp"

#include "../oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace grushin;

namespace {

constexpr double pi = std::numbers::pi;

RadialProblem make(int d1, double s, double mu, double R, int n = kDefaultRadialN) {
    RadialProblem p;
    p.d1 = d1;
    p.s = s;
    p.mu = mu;
    p.R = R;
    p.n = n;
    return p;
}

}  // namespace

TEST_CASE("pure Laplacian on intervals and balls") {
    SUBCASE("interval of radius 1") {
        CHECK(solve_radial(make(1, 1.0, 0.0, 1.0, 2048)).energy == doctest::Approx(pi * pi / 4).epsilon(1e-6));
    }
    SUBCASE("unit disk matches the Bessel zero") {
        const double j = oracle::j01();
        CHECK(j == doctest::Approx(2.404825557695773).epsilon(1e-14));
        CHECK(solve_radial(make(2, 0.0, 0.0, 1.0)).energy == doctest::Approx(j * j).epsilon(1e-6));
        CHECK(richardson_energy(make(2, 0.0, 0.0, 1.0, 1024)).extrapolated == doctest::Approx(j * j).epsilon(1e-9));
    }
    SUBCASE("unit 3-ball") {
        CHECK(solve_radial(make(3, 0.0, 0.0, 1.0)).energy == doctest::Approx(pi * pi).epsilon(1e-6));
    }
    SUBCASE("unit-volume balls") {
        const double j = oracle::j01();
        CHECK(mu1_ball(1, 1.0) == doctest::Approx(pi * pi).epsilon(1e-6));
        CHECK(mu1_ball(2, 1.0) == doctest::Approx(pi * j * j).epsilon(1e-6));
        const double r3 = std::cbrt(3.0 / (4.0 * pi));
        CHECK(mu1_ball(3, 1.0) == doctest::Approx(pi * pi / (r3 * r3)).epsilon(1e-6));
    }
}

TEST_CASE("unit ball volumes") {
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(pi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * pi / 3.0));
}

TEST_CASE("harmonic oscillator on a wide ball") {
    // -Delta + r^2 on R^d has ground energy d.
    for (int d : {1, 2, 3}) {
        const auto est = richardson_energy(make(d, 1.0, 1.0, 10.0, 4096));
        CHECK(est.extrapolated == doctest::Approx(static_cast<double>(d)).epsilon(1e-8));
    }
}

TEST_CASE("returned eigenfunction is positive, vanishes at R, and reproduces the energy split") {
    const auto p = make(2, 1.5, 7.0, 1.3, 1024);
    const auto sol = solve_radial(p);
    REQUIRE(sol.v.size() == 1025u);
    CHECK(sol.v.back() == 0.0);
    for (int i = 0; i < p.n; ++i) CHECK(sol.v[i] > 0.0);
    CHECK(sol.boundary_slope < 0.0);
    CHECK(sol.kinetic + p.mu * sol.hf_derivative == doctest::Approx(sol.energy).epsilon(1e-10));
    CHECK(hf_derivative(sol, p) == doctest::Approx(sol.hf_derivative).epsilon(1e-12));
}

TEST_CASE("radial solver matches a dense decomposition of the same pencil") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const int d1 = 1 + static_cast<int>(3 * unif(rng)) % 3;
        const auto p = make(d1, 0.25 + 2.75 * unif(rng), 100.0 * unif(rng), 0.5 + 2.0 * unif(rng),
                            16 + static_cast<int>(48 * unif(rng)));
        const long double dense = oracle::dense_pencil_min(p);
        const double ours = solve_radial(p).energy;
        CHECK(std::abs(ours - static_cast<double>(dense)) <= 1e-10 * std::abs(static_cast<double>(dense)));
    }
}

TEST_CASE("Hellmann-Feynman derivative matches central differences") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        const int d1 = 1 + trial % 3;
        const double s = 0.25 + 2.75 * unif(rng);
        const double mu = 0.1 + 99.9 * unif(rng);
        const auto p = make(d1, s, mu, 1.0, 2048);
        const double h = mu * 1e-4;
        auto q = p;
        q.mu = mu + h;
        const double up = solve_radial(q).energy;
        q.mu = mu - h;
        const double down = solve_radial(q).energy;
        CHECK(solve_radial(p).hf_derivative == doctest::Approx((up - down) / (2 * h)).epsilon(1e-5));
    }
}

TEST_CASE("scaling law in R") {
    // E(mu, R) = R^-2 E(mu R^(2s+2), 1).
    const double s = 1.3, mu = 4.0, R = 1.7;
    const double direct = solve_radial(make(2, s, mu, R, 2048)).energy;
    const double scaled = solve_radial(make(2, s, mu * std::pow(R, 2 * s + 2), 1.0, 2048)).energy / (R * R);
    CHECK(direct == doctest::Approx(scaled).epsilon(1e-10));
}

TEST_CASE("energy grows with mu and falls with R") {
    double prev = 0.0;
    for (double mu : {0.0, 0.5, 2.0, 10.0, 50.0}) {
        const double e = solve_radial(make(1, 1.0, mu, 1.0, 1024)).energy;
        CHECK(e > prev);
        prev = e;
    }
    prev = 1e300;
    for (double R : {0.5, 0.8, 1.0, 2.0}) {
        const double e = solve_radial(make(3, 0.5, 3.0, R, 1024)).energy;
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("integral identities converge with the grid") {
    const RadialProblem cases[] = {make(1, 1.0, 1.0, 1.0), make(2, 0.5, 10.0, 1.0), make(3, 2.0, 50.0, 1.0)};
    for (const auto& base : cases) {
        double prev[3] = {1e300, 1e300, 1e300};
        for (int n : {512, 1024, 2048, 4096}) {
            auto p = base;
            p.n = n;
            const auto r = identity_residuals(solve_radial(p), p);
            const double now[3] = {r.res1, r.res2, r.res3};
            for (int k = 0; k < 3; ++k) {
                CHECK(now[k] < 0.6 * prev[k]);
                prev[k] = now[k];
            }
        }
        for (double v : prev) CHECK(v < 1e-5);
    }
}

TEST_CASE("second-derivative certificate is non-negative") {
    for (int d1 : {1, 2, 3}) {
        for (double s : {0.5, 1.0, 2.0}) {
            for (double mu : {0.5, 5.0, 100.0}) {
                CHECK(second_derivative_sign(make(d1, s, mu, 1.0, 2048)) >= -1e-6);
            }
        }
    }
}

TEST_CASE("large exponents stay finite") {
    const auto sol = solve_radial(make(1, 150.0, 9.0 * pi * pi, 1.5));
    CHECK(std::isfinite(sol.energy));
    CHECK(sol.energy > 2.0);
    CHECK(sol.energy < pi * pi / 4 * 1.05);
}

TEST_CASE("invalid problems are rejected") {
    CHECK_THROWS_AS(solve_radial(make(0, 1.0, 1.0, 1.0)), InvalidProblem);
    CHECK_THROWS_AS(solve_radial(make(1, -1.0, 1.0, 1.0)), InvalidProblem);
    CHECK_THROWS_AS(solve_radial(make(1, 1.0, -1.0, 1.0)), InvalidProblem);
    CHECK_THROWS_AS(solve_radial(make(1, 1.0, 1.0, 0.0)), InvalidProblem);
    CHECK_THROWS_AS(solve_radial(make(1, 1.0, 1.0, 1.0, 1)), InvalidProblem);
    CHECK_THROWS_AS(mu1_ball(2, -1.0), InvalidProblem);
}
