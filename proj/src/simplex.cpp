#include "lfecon/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "lfecon/errors.hpp"

namespace lfecon {

SimplexResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                          const Eigen::VectorXd& start, const Eigen::VectorXd& scale,
                          const SimplexOptions& options) {
    const int n = static_cast<int>(start.size());
    if (n < 1) throw ConfigError("nelder_mead: empty parameter vector");
    if (scale.size() != start.size()) throw ConfigError("nelder_mead: scale size mismatch");
    for (int i = 0; i < n; ++i)
        if (!(scale(i) > 0.0)) throw ConfigError("nelder_mead: scale must be positive");

    constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5, kShrink = 0.5;

    std::vector<Eigen::VectorXd> xs(n + 1, start);
    for (int i = 0; i < n; ++i) xs[i + 1](i) += scale(i);
    std::vector<double> fs(n + 1);
    for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);

    std::vector<int> order(n + 1);
    SimplexResult result;
    for (result.iterations = 0; result.iterations < options.max_iterations;
         ++result.iterations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fs[a] < fs[b]; });
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        double diameter = 0.0;
        for (int i = 1; i <= n; ++i)
            diameter = std::max(diameter, (xs[order[i]] - xs[best]).norm());
        const double spread = fs[worst] - fs[best];
        if (spread <= options.tolerance * (std::abs(fs[best]) + options.tolerance) &&
            diameter <= options.tolerance * (1.0 + xs[best].norm())) {
            result.converged = true;
            break;
        }

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += xs[i];
        centroid /= n;

        const Eigen::VectorXd reflected = centroid + kReflect * (centroid - xs[worst]);
        const double f_reflected = f(reflected);

        if (f_reflected < fs[best]) {
            const Eigen::VectorXd expanded = centroid + kExpand * (reflected - centroid);
            const double f_expanded = f(expanded);
            if (f_expanded < f_reflected) {
                xs[worst] = expanded;
                fs[worst] = f_expanded;
            } else {
                xs[worst] = reflected;
                fs[worst] = f_reflected;
            }
            continue;
        }
        if (f_reflected < fs[second_worst]) {
            xs[worst] = reflected;
            fs[worst] = f_reflected;
            continue;
        }

        const bool outside = f_reflected < fs[worst];
        const Eigen::VectorXd contracted =
            outside ? Eigen::VectorXd(centroid + kContract * (reflected - centroid))
                    : Eigen::VectorXd(centroid - kContract * (centroid - xs[worst]));
        const double f_contracted = f(contracted);
        if (f_contracted < std::min(f_reflected, fs[worst])) {
            xs[worst] = contracted;
            fs[worst] = f_contracted;
            continue;
        }

        for (int i = 0; i <= n; ++i) {
            if (i == best) continue;
            xs[i] = xs[best] + kShrink * (xs[i] - xs[best]);
            fs[i] = f(xs[i]);
        }
    }

    const auto best_it = std::min_element(fs.begin(), fs.end());
    result.value = *best_it;
    result.x = xs[static_cast<std::size_t>(best_it - fs.begin())];
    return result;
}

}  // namespace lfecon
