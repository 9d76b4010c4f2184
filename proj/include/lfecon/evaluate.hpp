#pragma once

#include <string>

#include "lfecon/series.hpp"

namespace lfecon {

/// 1 - SSR/SST over the aligned overlap, SST taken against the observed mean
/// on that overlap. Not clamped: a model worse than the mean goes negative.
double r_squared(const Series& obs, const Series& pred);

/// Root-mean-square of (obs - pred) over the aligned overlap.
double rmsfe(const Series& obs, const Series& pred);

/// RMS error of the no-change benchmark that predicts x(t) by x(t-horizon).
double naive_rmsfe(const Series& s, int horizon = 1);

/// (cumulative obs - cumulative pred) / cumulative obs from `base` onward;
/// points where the cumulative observation is zero come back missing.
Series relative_cumulative_error(const Series& obs, const Series& pred, const Period& base);

struct EvaluationReport {
    double r2_annual = 0.0;
    double r2_cumulative = 0.0;
    double rmsfe_value = 0.0;
    double naive_rmsfe_value = 0.0;
    Series relative_error;
    Period span_start;
    Period span_end;
};

/// Full metric set over the aligned overlap of obs and pred.
EvaluationReport evaluate_model(const Series& obs, const Series& pred);

/// Same metrics with the prediction smoothed by a trailing 3-point moving
/// average before comparison against the raw observations.
EvaluationReport evaluate_smoothed_ma3(const Series& obs, const Series& pred);

}  // namespace lfecon
