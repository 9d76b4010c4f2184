#include "lfecon/unitroot.hpp"

#include <cmath>
#include <utility>

#include <Eigen/Dense>

#include "lfecon/errors.hpp"
#include "lfecon/regress.hpp"

namespace lfecon {

namespace {

constexpr int kLevels[3] = {1, 5, 10};

int deterministic_columns(DetCase det) {
    switch (det) {
        case DetCase::none: return 0;
        case DetCase::constant: return 1;
        case DetCase::constant_and_trend: return 2;
    }
    return 0;
}

struct DfRegression {
    OlsFit fit;       // coefficient 0 is the lagged level
    int nobs = 0;
};

// Dickey-Fuller regression: dx_t on [x_{t-1}, deterministics, dx_{t-1..t-p}].
DfRegression df_regression(const std::vector<double>& x, DetCase det, int lags) {
    const int n = static_cast<int>(x.size());
    const int nobs = n - 1 - lags;
    const int ncols = 1 + deterministic_columns(det) + lags;
    if (nobs <= ncols)
        throw DataError("unit-root regression needs more than " +
                        std::to_string(ncols + 1 + lags) + " observations, got " +
                        std::to_string(n));

    Eigen::VectorXd y(nobs);
    Eigen::MatrixXd X(nobs, ncols);
    for (int i = 0; i < nobs; ++i) {
        const int t = lags + 1 + i;  // index of dx_t in x
        y(i) = x[t] - x[t - 1];
        int col = 0;
        X(i, col++) = x[t - 1];
        if (det != DetCase::none) X(i, col++) = 1.0;
        if (det == DetCase::constant_and_trend) X(i, col++) = static_cast<double>(i + 1);
        for (int j = 1; j <= lags; ++j) X(i, col++) = x[t - j] - x[t - j - 1];
    }
    return DfRegression{ols(y, X), nobs};
}

UnitRootResult make_result(std::string name, const UnitRootSpec& spec, double statistic,
                           int nobs, double (*critical)(DetCase, int, int), DetCase cv_case) {
    UnitRootResult r;
    r.test_name = std::move(name);
    r.deterministic = spec.deterministic;
    r.lags = spec.lags;
    r.statistic = statistic;
    r.nobs = nobs;
    for (int level : kLevels) {
        const double cv = critical(cv_case, nobs, level);
        r.critical_values[level] = cv;
        r.reject_at[level] = statistic < cv;  // all four tests are left-tailed
    }
    return r;
}

std::vector<double> observed_or_throw(const Series& s, int minimum, const char* test) {
    auto x = contiguous_observed(s);
    if (static_cast<int>(x.size()) < minimum)
        throw DataError(std::string(test) + ": series '" + s.id() + "' has " +
                        std::to_string(x.size()) + " observed values, needs at least " +
                        std::to_string(minimum));
    return x;
}

}  // namespace

bool UnitRootResult::rejects(int level_percent) const {
    auto it = reject_at.find(level_percent);
    if (it == reject_at.end())
        throw ConfigError("no decision stored for the " + std::to_string(level_percent) +
                          "% level");
    return it->second;
}

UnitRootTest unit_root_test_from_string(const std::string& name) {
    if (name == "adf") return UnitRootTest::adf;
    if (name == "dfgls") return UnitRootTest::dfgls;
    if (name == "pp") return UnitRootTest::pp;
    throw ConfigError("unknown unit-root test '" + name + "' (expected adf, dfgls, or pp)");
}

std::string to_string(UnitRootTest t) {
    switch (t) {
        case UnitRootTest::adf: return "adf";
        case UnitRootTest::dfgls: return "dfgls";
        case UnitRootTest::pp: return "pp";
    }
    return "?";
}

std::string to_string(DetCase det) {
    switch (det) {
        case DetCase::none: return "none";
        case DetCase::constant: return "constant";
        case DetCase::constant_and_trend: return "trend";
    }
    return "?";
}

DetCase det_case_from_string(const std::string& name) {
    if (name == "none") return DetCase::none;
    if (name == "constant") return DetCase::constant;
    if (name == "trend" || name == "constant_and_trend") return DetCase::constant_and_trend;
    throw ConfigError("unknown deterministic case '" + name +
                      "' (expected none, constant, or trend)");
}

int default_pp_bandwidth(int nobs) {
    if (nobs < 1) throw DataError("default_pp_bandwidth: empty sample");
    return static_cast<int>(std::floor(4.0 * std::pow(nobs / 100.0, 2.0 / 9.0)));
}

UnitRootResult adf_test(const Series& s, const UnitRootSpec& spec) {
    if (spec.lags < 0) throw ConfigError("adf: negative lag order");
    const auto x = observed_or_throw(s, spec.lags + 10, "adf");
    const auto reg = df_regression(x, spec.deterministic, spec.lags);
    return make_result("adf", spec, reg.fit.t_stats(0), reg.nobs,
                       &critical_values::df_tau, spec.deterministic);
}

UnitRootResult dfgls_test(const Series& s, const UnitRootSpec& spec) {
    if (spec.lags < 0) throw ConfigError("dfgls: negative lag order");
    const auto x = observed_or_throw(s, spec.lags + 10, "dfgls");
    const int n = static_cast<int>(x.size());
    const bool trend = spec.deterministic == DetCase::constant_and_trend;

    // GLS detrending: quasi-difference the series and the deterministic terms
    // at the local-to-unity alternative, fit by OLS, subtract the fitted
    // deterministic part from the original levels.
    const double cbar = trend ? -13.5 : -7.0;
    const double alpha = 1.0 + cbar / n;
    const int ndet = trend ? 2 : 1;

    Eigen::VectorXd zy(n);
    Eigen::MatrixXd zd(n, ndet);
    zy(0) = x[0];
    zd(0, 0) = 1.0;
    if (trend) zd(0, 1) = 1.0;
    for (int t = 1; t < n; ++t) {
        zy(t) = x[t] - alpha * x[t - 1];
        zd(t, 0) = 1.0 - alpha;
        if (trend) zd(t, 1) = (t + 1) - alpha * t;
    }
    const OlsFit gls = ols(zy, zd);

    std::vector<double> detrended(x.size());
    for (int t = 0; t < n; ++t) {
        double fitted = gls.coefficients(0);
        if (trend) fitted += gls.coefficients(1) * (t + 1);
        detrended[t] = x[t] - fitted;
    }

    const auto reg = df_regression(detrended, DetCase::none, spec.lags);
    return make_result("dfgls", spec, reg.fit.t_stats(0), reg.nobs,
                       &critical_values::dfgls, spec.deterministic);
}

PhillipsPerronResult pp_test(const Series& s, const UnitRootSpec& spec) {
    if (spec.lags < 0) throw ConfigError("pp: negative bandwidth");
    const auto x = observed_or_throw(s, 15, "pp");
    const auto reg = df_regression(x, spec.deterministic, 0);
    const OlsFit& fit = reg.fit;
    const double N = reg.nobs;

    const double gamma = fit.coefficients(0);   // coefficient on x_{t-1}
    const double se = fit.standard_errors(0);
    const double tstat = fit.t_stats(0);
    const double s2 = fit.sigma2();

    double gamma0 = 0.0;
    for (double u : fit.residuals) gamma0 += u * u;
    gamma0 /= N;
    const double lambda2 = long_run_variance(fit.residuals, spec.lags);
    if (lambda2 <= 0.0)
        throw NumericError("pp: long-run variance collapsed to zero; residuals are degenerate");
    const double lambda = std::sqrt(lambda2);

    const double z_rho =
        N * gamma - 0.5 * (N * N * se * se / s2) * (lambda2 - gamma0);
    const double z_tau =
        std::sqrt(gamma0 / lambda2) * tstat -
        0.5 * (lambda2 - gamma0) * N * se / (lambda * std::sqrt(s2));

    PhillipsPerronResult out;
    out.z_rho = make_result("pp-zrho", spec, z_rho, reg.nobs,
                            &critical_values::df_rho, spec.deterministic);
    out.z_tau = make_result("pp-ztau", spec, z_tau, reg.nobs,
                            &critical_values::df_tau, spec.deterministic);
    return out;
}

std::vector<UnitRootResult> run_unit_root(const Series& s, const UnitRootSpec& spec) {
    switch (spec.test) {
        case UnitRootTest::adf: return {adf_test(s, spec)};
        case UnitRootTest::dfgls: return {dfgls_test(s, spec)};
        case UnitRootTest::pp: {
            auto pp = pp_test(s, spec);
            return {std::move(pp.z_rho), std::move(pp.z_tau)};
        }
    }
    throw ConfigError("unknown unit-root test selector");
}

}  // namespace lfecon
