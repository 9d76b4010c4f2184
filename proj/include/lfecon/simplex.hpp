#pragma once

#include <functional>

#include <Eigen/Dense>

namespace lfecon {

struct SimplexOptions {
    int max_iterations = 2000;
    double tolerance = 1e-13;  // on both function spread and simplex diameter
};

struct SimplexResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Nelder-Mead downhill simplex. `scale` sets the initial simplex edge length
/// per coordinate and must be strictly positive.
SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start, const Eigen::VectorXd& scale,
                          const SimplexOptions& options = {});

}  // namespace lfecon
