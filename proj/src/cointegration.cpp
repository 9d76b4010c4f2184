#include "lfecon/cointegration.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>

#include <Eigen/Dense>

#include "lfecon/critical_values.hpp"
#include "lfecon/errors.hpp"

namespace lfecon {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Stack the series into a T x p matrix over the span where every series is
// observed; the span must be contiguous because the VAR needs lags.
Eigen::MatrixXd common_block(const std::vector<Series>& ys) {
    const int p = static_cast<int>(ys.size());
    Period start = ys[0].start();
    Period end = ys[0].end_period();
    for (const Series& s : ys) {
        if (s.frequency() != ys[0].frequency())
            throw DataError("johansen: series '" + s.id() + "' has a different frequency");
        std::size_t lo = 0;
        while (lo < s.size() && !s.value(lo)) ++lo;
        std::size_t hi = s.size();
        while (hi > lo && !s.value(hi - 1)) --hi;
        if (lo == hi) throw DataError("johansen: series '" + s.id() + "' is all missing");
        if (period_less(start, s.period(lo))) start = s.period(lo);
        if (period_less(s.period(hi - 1), end)) end = s.period(hi - 1);
    }
    if (period_less(end, start))
        throw DataError("johansen: the series have no overlapping observed span");

    const int T = periods_between(start, end) + 1;
    Eigen::MatrixXd Y(T, p);
    for (int j = 0; j < p; ++j) {
        for (int t = 0; t < T; ++t) {
            const auto v = ys[j].at(add_periods(start, t));
            if (!v)
                throw DataError("johansen: series '" + ys[j].id() + "' has a gap at " +
                                add_periods(start, t).str() + " inside the common span");
            Y(t, j) = *v;
        }
    }
    return Y;
}

// Residuals of each column of A after projecting out the columns of Z.
Eigen::MatrixXd partial_out(const Eigen::MatrixXd& A, const Eigen::MatrixXd& Z) {
    if (Z.cols() == 0) return A;
    const Eigen::MatrixXd beta = (Z.transpose() * Z).ldlt().solve(Z.transpose() * A);
    return A - Z * beta;
}

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    const auto& L = llt.matrixLLT();
    double acc = 0.0;
    for (int i = 0; i < L.rows(); ++i) acc += std::log(L(i, i));
    return 2.0 * acc;
}

}  // namespace

EngleGrangerReport engle_granger(const Series& residual, int dfgls_max_lag) {
    if (dfgls_max_lag < 1) throw ConfigError("engle_granger: DF-GLS max lag must be >= 1");
    const auto u = contiguous_observed(residual);
    if (u.size() < 15)
        throw DataError("engle_granger: residual '" + residual.id() + "' has " +
                        std::to_string(u.size()) + " values, needs at least 15");
    const double mean = std::accumulate(u.begin(), u.end(), 0.0) / u.size();
    double var = 0.0;
    for (double v : u) var += (v - mean) * (v - mean);
    if (var / u.size() < 1e-30)
        throw NumericError("engle_granger: residual is numerically constant; a perfect fit "
                           "leaves nothing to test");

    EngleGrangerReport report;
    UnitRootSpec adf_spec{UnitRootTest::adf, DetCase::constant, 0};
    report.residual_tests.push_back(adf_test(residual, adf_spec));

    for (int lag = 1; lag <= dfgls_max_lag; ++lag) {
        UnitRootSpec g{UnitRootTest::dfgls, DetCase::constant_and_trend, lag};
        report.residual_tests.push_back(dfgls_test(residual, g));
    }

    UnitRootSpec pp_spec{UnitRootTest::pp, DetCase::constant,
                         default_pp_bandwidth(static_cast<int>(u.size()))};
    const auto pp = pp_test(residual, pp_spec);
    report.residual_tests.push_back(pp.z_rho);
    report.residual_tests.push_back(pp.z_tau);

    report.cointegrated_at_1pct = report.residual_tests.front().rejects(1) &&
                                  pp.z_rho.rejects(1) && pp.z_tau.rejects(1);
    return report;
}

JohansenTrend johansen_trend_from_string(const std::string& name) {
    if (name == "none") return JohansenTrend::none;
    if (name == "rconstant") return JohansenTrend::rconstant;
    throw ConfigError("unknown Johansen trend spec '" + name +
                      "' (expected none or rconstant)");
}

std::string to_string(JohansenTrend t) {
    return t == JohansenTrend::none ? "none" : "rconstant";
}

JohansenReport johansen(const std::vector<Series>& ys, int max_lag, JohansenTrend trend) {
    if (ys.size() < 2) throw ConfigError("johansen: need at least two series");
    if (max_lag < 1) throw ConfigError("johansen: max lag must be >= 1");

    const Eigen::MatrixXd Y = common_block(ys);
    const int T = static_cast<int>(Y.rows());
    const int p = static_cast<int>(Y.cols());
    if (T < 10 + max_lag)
        throw DataError("johansen: " + std::to_string(T) + " aligned observations, needs at least " +
                        std::to_string(10 + max_lag));

    // VAR(max_lag) in levels written in error-correction form: the regression
    // sample runs over t = max_lag .. T-1.
    const int N = T - max_lag;
    const bool rconst = trend == JohansenTrend::rconstant;
    const int m = p + (rconst ? 1 : 0);  // columns of the lagged-level block

    Eigen::MatrixXd Z0(N, p);   // dy_t
    Eigen::MatrixXd Z1(N, m);   // y_{t-1} (+ restricted constant)
    Eigen::MatrixXd Z2(N, p * (max_lag - 1));  // dy_{t-1} .. dy_{t-max_lag+1}
    for (int i = 0; i < N; ++i) {
        const int t = max_lag + i;
        Z0.row(i) = Y.row(t) - Y.row(t - 1);
        Z1.block(i, 0, 1, p) = Y.row(t - 1);
        if (rconst) Z1(i, p) = 1.0;
        for (int j = 1; j < max_lag; ++j)
            Z2.block(i, p * (j - 1), 1, p) = Y.row(t - j) - Y.row(t - j - 1);
    }

    const Eigen::MatrixXd R0 = partial_out(Z0, Z2);
    const Eigen::MatrixXd R1 = partial_out(Z1, Z2);

    const Eigen::MatrixXd S00 = R0.transpose() * R0 / N;
    const Eigen::MatrixXd S01 = R0.transpose() * R1 / N;
    const Eigen::MatrixXd S11 = R1.transpose() * R1 / N;

    const Eigen::LLT<Eigen::MatrixXd> llt00(S00);
    if (llt00.info() != Eigen::Success || S00.determinant() < 1e-12 * std::pow(S00.trace() / p, p))
        throw NumericError("johansen: S00 is singular; the differenced series are collinear");
    const Eigen::LLT<Eigen::MatrixXd> llt11(S11);
    if (llt11.info() != Eigen::Success)
        throw NumericError("johansen: S11 is singular; are the level series duplicated?");

    // Symmetrize the generalized eigenproblem with the Cholesky factor of S11.
    const Eigen::MatrixXd L = llt11.matrixL();
    const Eigen::MatrixXd S00inv_S01 = llt00.solve(S01);
    const Eigen::MatrixXd inner = S01.transpose() * S00inv_S01;  // S10 S00^-1 S01
    const Eigen::MatrixXd half = L.triangularView<Eigen::Lower>().solve(inner);
    const Eigen::MatrixXd sym =
        L.triangularView<Eigen::Lower>().solve(half.transpose()).transpose();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sym);
    if (eig.info() != Eigen::Success)
        throw NumericError("johansen: eigenvalue decomposition failed");

    JohansenReport report;
    report.trend_spec = trend;
    report.max_lag = max_lag;
    report.nobs = N;

    // Largest p eigenvalues, descending. The restricted-constant problem has
    // p+1 of them; the smallest belongs to the constant direction and never
    // enters the trace sum.
    std::vector<double> lambda;
    for (int i = static_cast<int>(eig.eigenvalues().size()) - 1;
         static_cast<int>(lambda.size()) < p && i >= 0; --i) {
        double v = eig.eigenvalues()(i);
        if (v < 0.0 && v > -1e-12) v = 0.0;
        if (v < 0.0 || v >= 1.0) {
            if (v >= 1.0 && v < 1.0 + 1e-10) {
                v = std::nextafter(1.0, 0.0);
                report.notes += "eigenvalue clamped below 1; ";
            } else {
                throw NumericError("johansen: eigenvalue " + std::to_string(v) +
                                   " outside [0,1); moment matrices are ill-conditioned");
            }
        }
        lambda.push_back(v);
    }

    const double base_ll = -0.5 * N * p * (std::log(2.0 * std::numbers::pi) + 1.0) -
                           0.5 * N * log_det_from_llt(llt00);

    double tail = 0.0;  // sum_{i>r} ln(1 - lambda_i)
    std::vector<double> log1m(p);
    for (int i = 0; i < p; ++i) {
        log1m[i] = std::log1p(-lambda[i]);
        tail += log1m[i];
    }

    report.selected_rank = p;
    double head = 0.0;  // sum_{i<=r} ln(1 - lambda_i)
    bool decided = false;
    for (int r = 0; r <= p; ++r) {
        JohansenRankRow row;
        row.rank = r;
        row.eigenvalue = r == 0 ? kNaN : lambda[r - 1];
        row.log_likelihood = base_ll - 0.5 * N * head;
        if (r < p) {
            row.trace_stat = -N * (tail - head);
            row.critical_5pct = critical_values::johansen_trace_5pct(p - r, rconst);
            if (!decided && row.trace_stat < row.critical_5pct) {
                report.selected_rank = r;
                decided = true;
            }
            head += log1m[r];
        } else {
            row.trace_stat = kNaN;
            row.critical_5pct = kNaN;
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace lfecon
