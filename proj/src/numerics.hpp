#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

namespace ratekit {

// Convergence controls shared by the iterative solvers.
struct Tolerance {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_iter = 200;
    void validate() const;
};

// Finite sentinel reported as the condition number when the smallest
// singular value of a design matrix is exactly zero. Finite so that reports
// stay serializable; callers apply their own flag thresholds.
inline constexpr double kRankDeficientCondition = 1e300;

// Pooled least-squares fit. condition_number is the ratio of the largest to
// the smallest singular value of the design matrix, reported as computed;
// on numerically rank-deficient designs the solve truncates the degenerate
// directions (their coefficient components are zero) instead of inverting.
struct LeastSquaresFit {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    double r_squared = 0.0;
    double condition_number = 1.0;
    int rank = 0;
};

// Bracketed root finding: bisection on [lo, hi], then a guarded Newton
// polish (secant-style slope from central differences) that only accepts
// steps staying inside the final bracket and reducing |f|. Stops when
// |f(x)| <= abs_tol or the bracket width falls below rel_tol * |x|.
// Throws Errc::Bracket if f(lo) and f(hi) have the same sign and
// Errc::NoConvergence if max_iter bisections are exhausted.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol = {});

// Central difference (f(x+h) - f(x-h)) / (2h). Throws if f is not finite at
// the sample points.
double finite_diff(const std::function<double(double)>& f, double x, double h);

// Step size for rate-like arguments (magnitudes around 1e-2..1e0).
inline double default_diff_step(double x) {
    return std::max(1e-6, 1e-6 * std::fabs(x));
}

// Smallest k with P(Binomial(n, p) <= k) >= level, by exact CDF summation
// (log-space PMF recurrence, so large n does not underflow).
long long binomial_quantile(long long n, double p, double level);

// Least squares via singular value decomposition of the design matrix.
LeastSquaresFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

} // namespace ratekit
