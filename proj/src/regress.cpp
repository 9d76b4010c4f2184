#include "lfecon/regress.hpp"

#include <cmath>
#include <string>

#include "lfecon/errors.hpp"

namespace lfecon {

OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    const auto n = X.rows();
    const auto k = X.cols();
    if (y.size() != n) throw NumericError("ols: y length does not match rows of X");
    if (n <= k)
        throw NumericError("ols: " + std::to_string(n) + " observations cannot identify " +
                           std::to_string(k) + " coefficients");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) {
        // Pivot order puts the dependent columns last; report them by index.
        std::string cols;
        const auto& perm = qr.colsPermutation().indices();
        for (Eigen::Index i = qr.rank(); i < k; ++i) {
            if (!cols.empty()) cols += ", ";
            cols += std::to_string(perm[i]);
        }
        throw NumericError("ols: design matrix is rank deficient (collinear column(s) " + cols +
                           ")");
    }

    OlsFit fit;
    fit.nobs = static_cast<int>(n);
    fit.coefficients = qr.solve(y);

    Eigen::VectorXd resid = y - X * fit.coefficients;
    fit.residuals.assign(resid.data(), resid.data() + resid.size());
    fit.rss = resid.squaredNorm();

    const double sigma2 = fit.rss / static_cast<double>(n - k);
    // (X'X)^-1 from the QR factors; R is k x k upper triangular.
    Eigen::MatrixXd r = qr.matrixR().topLeftCorner(k, k).triangularView<Eigen::Upper>();
    Eigen::MatrixXd rinv = r.inverse();
    Eigen::MatrixXd xtx_inv = qr.colsPermutation() * (rinv * rinv.transpose()) *
                              qr.colsPermutation().transpose();

    fit.standard_errors.resize(k);
    fit.t_stats.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.standard_errors[j] = std::sqrt(sigma2 * xtx_inv(j, j));
        fit.t_stats[j] = fit.coefficients[j] / fit.standard_errors[j];
    }
    return fit;
}

OlsFit ols(std::span<const double> y, const Eigen::MatrixXd& X) {
    Eigen::VectorXd yv = Eigen::Map<const Eigen::VectorXd>(y.data(), y.size());
    return ols(yv, X);
}

double long_run_variance(std::span<const double> u, int bandwidth) {
    const int n = static_cast<int>(u.size());
    if (bandwidth < 0) throw NumericError("long_run_variance: bandwidth must be >= 0");
    if (bandwidth >= n)
        throw NumericError("long_run_variance: bandwidth " + std::to_string(bandwidth) +
                           " must be smaller than sample size " + std::to_string(n));

    double gamma0 = 0.0;
    for (int t = 0; t < n; ++t) gamma0 += u[t] * u[t];
    gamma0 /= n;

    double lrv = gamma0;
    for (int j = 1; j <= bandwidth; ++j) {
        double gamma_j = 0.0;
        for (int t = j; t < n; ++t) gamma_j += u[t] * u[t - j];
        gamma_j /= n;
        const double w = 1.0 - static_cast<double>(j) / (bandwidth + 1);
        lrv += 2.0 * w * gamma_j;
    }
    return lrv;
}

}  // namespace lfecon
