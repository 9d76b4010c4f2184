#pragma once

#include <string>
#include <vector>

#include "lfecon/series.hpp"
#include "lfecon/unitroot.hpp"

namespace lfecon {

/// Residual-based cointegration evidence. The residual under test comes from
/// the cumulative-curve calibration rather than a static OLS first stage, so
/// this is a deliberate variant of the textbook two-step procedure.
struct EngleGrangerReport {
    std::vector<UnitRootResult> residual_tests;  // adf, dfgls at lags 1..k, pp pair
    bool cointegrated_at_1pct = false;
};

/// Runs the unit-root battery on a model residual: ADF (constant, no
/// augmentation), DF-GLS with a trend at every lag from 1 to `dfgls_max_lag`,
/// and Phillips-Perron at the default bandwidth. The headline decision
/// requires the ADF and both Phillips-Perron forms to reject at 1%.
EngleGrangerReport engle_granger(const Series& residual, int dfgls_max_lag);

enum class JohansenTrend { none, rconstant };

JohansenTrend johansen_trend_from_string(const std::string& name);
std::string to_string(JohansenTrend t);

struct JohansenRankRow {
    int rank = 0;
    double log_likelihood = 0.0;
    double eigenvalue = 0.0;    // NaN on the rank-0 row (no eigenvalue enters yet)
    double trace_stat = 0.0;    // NaN on the full-rank row
    double critical_5pct = 0.0; // NaN on the full-rank row
};

struct JohansenReport {
    JohansenTrend trend_spec = JohansenTrend::none;
    int max_lag = 1;
    int nobs = 0;
    std::vector<JohansenRankRow> rows;  // ranks 0..p
    int selected_rank = 0;              // first rank not rejected at 5%
    std::string notes;
};

/// Johansen trace test via reduced-rank regression on a levels VAR(max_lag).
/// `rconstant` restricts the constant to the cointegrating space; `none` has
/// no deterministic terms at all.
JohansenReport johansen(const std::vector<Series>& ys, int max_lag, JohansenTrend trend);

}  // namespace lfecon
