#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

// Deterministic noise for tests: mt19937_64 plus an explicit Box-Muller
// transform, so simulated statistics do not depend on the standard library's
// normal_distribution implementation.
namespace testsupport {

class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

    double operator()() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 1e-300) u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        spare_ = radius * std::sin(angle);
        have_spare_ = true;
        return radius * std::cos(angle);
    }

private:
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// Independent stream per (master seed, trial index).
inline std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (trial + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::vector<double> white_noise(std::uint64_t seed, int n, double sigma = 1.0) {
    Gaussian g(seed);
    std::vector<double> x(n);
    for (int t = 0; t < n; ++t) x[t] = sigma * g();
    return x;
}

inline std::vector<double> ar1(std::uint64_t seed, int n, double phi, double sigma = 1.0,
                               int burn_in = 100) {
    Gaussian g(seed);
    std::vector<double> x(n);
    double state = 0.0;
    for (int t = 0; t < burn_in; ++t) state = phi * state + sigma * g();
    for (int t = 0; t < n; ++t) {
        state = phi * state + sigma * g();
        x[t] = state;
    }
    return x;
}

inline std::vector<double> random_walk(std::uint64_t seed, int n, double sigma = 1.0) {
    Gaussian g(seed);
    std::vector<double> x(n);
    double state = 0.0;
    for (int t = 0; t < n; ++t) {
        state += sigma * g();
        x[t] = state;
    }
    return x;
}

}  // namespace testsupport
