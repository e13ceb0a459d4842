#include "numerics.hpp"

#include "errors.hpp"

#include <cmath>
#include <limits>

namespace ratekit {

void Tolerance::validate() const {
    if (!(abs_tol > 0.0)) fail(Errc::InvalidArgument, "Tolerance: abs_tol must be positive");
    if (!(rel_tol > 0.0)) fail(Errc::InvalidArgument, "Tolerance: rel_tol must be positive");
    if (max_iter < 1) fail(Errc::InvalidArgument, "Tolerance: max_iter must be at least 1");
}

namespace {

double eval_or_fail(const std::function<double(double)>& f, double x) {
    double v = f(x);
    if (std::isnan(v)) fail(Errc::InvalidArgument, "find_root: function is not evaluable in the bracket");
    return v;
}

bool same_sign(double a, double b) { return (a > 0.0) == (b > 0.0); }

} // namespace

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 const Tolerance& tol) {
    tol.validate();
    if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
        fail(Errc::InvalidArgument, "find_root: invalid bracket endpoints");

    double flo = eval_or_fail(f, lo);
    if (flo == 0.0) return lo;
    double fhi = eval_or_fail(f, hi);
    if (fhi == 0.0) return hi;
    if (same_sign(flo, fhi))
        fail(Errc::Bracket, "find_root: no sign change on the bracket");

    double a = lo, b = hi, fa = flo;
    double x = lo, fx = flo;
    bool converged = false;
    for (int it = 0; it < tol.max_iter; ++it) {
        x = 0.5 * (a + b);
        fx = eval_or_fail(f, x);
        if (std::fabs(fx) <= tol.abs_tol) {
            converged = true;
            break;
        }
        if (same_sign(fx, fa)) {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        if ((b - a) <= tol.rel_tol * std::fabs(x)) {
            converged = true;
            break;
        }
    }
    if (!converged) fail(Errc::NoConvergence, "find_root: max_iter exceeded");

    // Newton polish. The bracket criterion bounds the error in x; these few
    // guarded steps push |f(x)| toward machine level when the slope allows.
    for (int it = 0; it < 8 && fx != 0.0; ++it) {
        double h = default_diff_step(x);
        double slope = (f(x + h) - f(x - h)) / (2.0 * h);
        if (!std::isfinite(slope) || slope == 0.0) break;
        double next = x - fx / slope;
        if (!(next > a && next < b)) break;
        double fnext = f(next);
        if (!std::isfinite(fnext) || std::fabs(fnext) >= std::fabs(fx)) break;
        x = next;
        fx = fnext;
    }
    return x;
}

double finite_diff(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0.0)) fail(Errc::InvalidArgument, "finite_diff: step must be positive");
    double up = f(x + h);
    double dn = f(x - h);
    if (!std::isfinite(up) || !std::isfinite(dn))
        fail(Errc::InvalidArgument, "finite_diff: function not finite at sample points");
    return (up - dn) / (2.0 * h);
}

long long binomial_quantile(long long n, double p, double level) {
    if (n < 0) fail(Errc::InvalidArgument, "binomial_quantile: n must be nonnegative");
    if (!(p >= 0.0 && p <= 1.0)) fail(Errc::InvalidArgument, "binomial_quantile: p must be in [0,1]");
    if (!(level > 0.0 && level < 1.0))
        fail(Errc::InvalidArgument, "binomial_quantile: level must be in (0,1)");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;

    // CDF summation with the PMF carried in log space; terms far below the
    // mode underflow to zero exp(), which is harmless for the running sum.
    double log_pmf = static_cast<double>(n) * std::log1p(-p);
    const double log_odds = std::log(p) - std::log1p(-p);
    double cdf = std::exp(log_pmf);
    long long k = 0;
    while (cdf < level && k < n) {
        log_pmf += std::log(static_cast<double>(n - k)) - std::log(static_cast<double>(k + 1)) + log_odds;
        cdf += std::exp(log_pmf);
        ++k;
    }
    return k;
}

LeastSquaresFit ols_fit(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    const Eigen::Index n = X.rows();
    const Eigen::Index k = X.cols();
    if (k < 1 || n < k) fail(Errc::InvalidArgument, "ols_fit: need n >= k >= 1");
    if (y.size() != n) fail(Errc::InvalidArgument, "ols_fit: response length must match rows");
    if (!X.allFinite() || !y.allFinite()) fail(Errc::InvalidArgument, "ols_fit: non-finite entries");

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(X, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(k - 1);

    LeastSquaresFit fit;
    fit.condition_number =
        (smin > 0.0) ? std::min(smax / smin, kRankDeficientCondition) : kRankDeficientCondition;
    if (!(fit.condition_number >= 1.0)) fit.condition_number = 1.0;

    const double eps = std::numeric_limits<double>::epsilon();
    const double cutoff = smax * static_cast<double>(std::max(n, k)) * eps;
    Eigen::Index rank = 0;
    while (rank < k && sv(rank) > cutoff) ++rank;
    fit.rank = static_cast<int>(rank);

    // Truncated pseudo-inverse solve: coefficients have no component along
    // the dropped singular directions.
    const Eigen::MatrixXd& U = svd.matrixU();
    const Eigen::MatrixXd& V = svd.matrixV();
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
    for (Eigen::Index i = 0; i < rank; ++i)
        beta += (U.col(i).dot(y) / sv(i)) * V.col(i);

    const Eigen::VectorXd resid = y - X * beta;
    const double rss = resid.squaredNorm();
    const double dof = static_cast<double>(n - rank);
    const double s2 = dof > 0.0 ? rss / dof : 0.0;

    fit.coefficients.assign(beta.data(), beta.data() + k);
    fit.standard_errors.resize(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
        double var = 0.0;
        for (Eigen::Index i = 0; i < rank; ++i) {
            const double vij = V(j, i) / sv(i);
            var += vij * vij;
        }
        fit.standard_errors[static_cast<std::size_t>(j)] = std::sqrt(s2 * var);
    }

    const double mean = y.mean();
    const double tss = (y.array() - mean).square().sum();
    if (tss > 0.0) {
        fit.r_squared = 1.0 - rss / tss;
        fit.r_squared = std::clamp(fit.r_squared, 0.0, 1.0);
    } else {
        fit.r_squared = rss <= n * eps * (1.0 + mean * mean) ? 1.0 : 0.0;
    }
    return fit;
}

} // namespace ratekit
