#include "grushin/errors.hpp"
#include "grushin/tridiagonal.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>

using namespace grushin;

namespace {

SymmetricTridiagonal laplacian_1d(int n) {
    SymmetricTridiagonal t;
    t.diag.assign(n, 2.0);
    t.off.assign(n - 1, -1.0);
    return t;
}

double dense_min(const SymmetricTridiagonal& t) {
    const int n = static_cast<int>(t.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = t.diag[i];
        if (i + 1 < n) a(i, i + 1) = a(i + 1, i) = t.off[i];
    }
    return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

}  // namespace

TEST_CASE("lowest eigenpair of the discrete 1-D Laplacian is explicit") {
    for (int n : {2, 5, 64, 1000}) {
        const auto t = laplacian_1d(n);
        const auto e = lowest_eigenpair(t);
        const double exact = 4.0 * std::pow(std::sin(std::numbers::pi / (2.0 * (n + 1))), 2);
        CHECK(e.eigenvalue == doctest::Approx(exact).epsilon(1e-11));
        double norm = 0.0;
        for (std::size_t i = 0; i < e.vector.size(); ++i) {
            CHECK(e.vector[i] >= 0.0);
            norm += e.vector[i] * e.vector[i];
            const double expected = std::sin(std::numbers::pi * (i + 1) / (n + 1));
            CHECK(e.vector[i] / e.vector[0] == doctest::Approx(expected / std::sin(std::numbers::pi / (n + 1))).epsilon(1e-7));
        }
        CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(e.relative_residual < 1e-10);
    }
}

TEST_CASE("sturm count agrees with the explicit spectrum") {
    const int n = 20;
    const auto t = laplacian_1d(n);
    for (int k = 1; k <= n; ++k) {
        const double ek = 4.0 * std::pow(std::sin(k * std::numbers::pi / (2.0 * (n + 1))), 2);
        CHECK(t.count_below(ek - 1e-9) == static_cast<std::size_t>(k - 1));
        CHECK(t.count_below(ek + 1e-9) == static_cast<std::size_t>(k));
    }
}

TEST_CASE("random graded tridiagonals agree with a dense solve") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(unif(rng) * 60);
        SymmetricTridiagonal t;
        for (int i = 0; i < n; ++i) t.diag.push_back(2.0 + std::pow(10.0, 6.0 * unif(rng)) * (i == n - 1));
        for (int i = 0; i + 1 < n; ++i) t.off.push_back(-(0.1 + unif(rng)));
        CHECK(lowest_eigenpair(t).eigenvalue == doctest::Approx(dense_min(t)).epsilon(1e-10));
    }
}

TEST_CASE("bounds bracket the lowest eigenvalue") {
    const auto t = laplacian_1d(30);
    const double e = lowest_eigenpair(t).eigenvalue;
    CHECK(t.gershgorin_lower() <= e);
    CHECK(e <= t.min_diagonal());
    CHECK(t.inf_norm() == doctest::Approx(4.0));
}

TEST_CASE("shifted Thomas solve inverts T - shift I") {
    const auto t = laplacian_1d(12);
    std::vector<double> rhs(12), x(12), back(12);
    for (int i = 0; i < 12; ++i) rhs[i] = 1.0 + i;
    solve_shifted(t, -0.5, rhs, x);
    t.multiply(x, back);
    for (int i = 0; i < 12; ++i) CHECK(back[i] + 0.5 * x[i] == doctest::Approx(rhs[i]).epsilon(1e-12));
}

TEST_CASE("single-entry matrix") {
    SymmetricTridiagonal t;
    t.diag = {3.5};
    const auto e = lowest_eigenpair(t);
    CHECK(e.eigenvalue == doctest::Approx(3.5));
    REQUIRE(e.vector.size() == 1);
    CHECK(e.vector[0] == doctest::Approx(1.0));
}
