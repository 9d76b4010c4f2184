#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

namespace lfecon {

/// Ordinary least squares fit summary.
struct OlsFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd standard_errors;
    Eigen::VectorXd t_stats;
    std::vector<double> residuals;
    double rss = 0.0;
    int nobs = 0;

    double sigma2() const {  // residual variance, RSS / (n - k)
        return rss / static_cast<double>(nobs - coefficients.size());
    }
};

/// Least squares of y on the columns of X via column-pivoted QR. Rank-deficient
/// designs raise NumericError naming the collinear columns.
OlsFit ols(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

OlsFit ols(std::span<const double> y, const Eigen::MatrixXd& X);

/// Newey-West long-run variance with Bartlett weights:
///   gamma_0 + 2 * sum_{j=1..bandwidth} (1 - j/(bandwidth+1)) * gamma_j,
/// where gamma_j = (1/n) * sum_t u_t u_{t-j} (uncentered). Nonnegative by
/// construction of the Bartlett kernel.
double long_run_variance(std::span<const double> u, int bandwidth);

}  // namespace lfecon
