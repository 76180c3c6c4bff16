#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace grushin {

// Symmetric tridiagonal matrix stored as its main diagonal and first
// off-diagonal (off.size() == diag.size() - 1).
struct SymmetricTridiagonal {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }

    // Number of eigenvalues strictly below x (Sturm count from the LDL^T
    // pivots of T - xI).
    std::size_t count_below(double x) const;

    double inf_norm() const;

    // Gershgorin lower bound and the smallest diagonal entry (an upper
    // bound for the lowest eigenvalue via the Rayleigh quotient of e_i).
    double gershgorin_lower() const;
    double min_diagonal() const;

    void multiply(std::span<const double> x, std::span<double> y) const;
};

struct LowestEigenpair {
    double eigenvalue = 0.0;     // Rayleigh quotient of the returned vector
    double bisection_value = 0.0;
    std::vector<double> vector;  // unit 2-norm, non-negative
    double relative_residual = 0.0;
    int bisection_steps = 0;
    int inverse_steps = 0;
};

struct EigenOptions {
    double bisection_rel_tol = 1e-12;
    double residual_tol = 1e-10;  // ||Tx - ex||_inf / || |T| |x| ||_inf
    int max_bisection = 400;
    int max_inverse = 50;
};

// Lowest eigenpair by Sturm bisection followed by inverse iteration with a
// shift placed just below the bisection bracket. Throws NonConvergence.
LowestEigenpair lowest_eigenpair(const SymmetricTridiagonal& t, const EigenOptions& opts = {});

// Solve (T - shift I) x = rhs by the Thomas recurrence. For shifts below
// the lowest eigenvalue of an irreducible M-matrix the recurrence is
// pivot-free and preserves positivity.
void solve_shifted(const SymmetricTridiagonal& t, double shift, std::span<const double> rhs,
                   std::span<double> x);

}  // namespace grushin
