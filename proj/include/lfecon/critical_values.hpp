#pragma once

namespace lfecon {

/// Deterministic terms included in a unit-root regression.
enum class DetCase { none, constant, constant_and_trend };

}  // namespace lfecon

namespace lfecon::critical_values {

using lfecon::DetCase;

/// Dickey-Fuller t-distribution critical value from the MacKinnon (2010)
/// response surface, evaluated at the regression sample size. Used for the
/// ADF statistic and the Phillips-Perron z(tau).
/// `level` is the significance in percent: 1, 5 or 10.
double df_tau(DetCase det, int nobs, int level);

/// Dickey-Fuller normalized-bias (n * (rho - 1)) critical value, interpolated
/// in sample size from the classical tables. Used for Phillips-Perron z(rho).
double df_rho(DetCase det, int nobs, int level);

/// DF-GLS critical value. The demeaned case follows the no-deterministics
/// Dickey-Fuller t distribution; the detrended case uses the
/// Elliott-Rothenberg-Stock table interpolated in sample size.
double dfgls(DetCase det, int nobs, int level);

/// Johansen trace-test 5% critical value for `n_unrestricted` series under
/// test with p - r remaining ranks, Osterwald-Lenum style tables.
/// `restricted_constant` selects the table with a constant restricted to the
/// cointegrating space; otherwise no deterministic terms.
double johansen_trace_5pct(int p_minus_r, bool restricted_constant);

}  // namespace lfecon::critical_values
