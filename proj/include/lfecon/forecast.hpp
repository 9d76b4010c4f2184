#pragma once

#include <string>

#include "lfecon/lagmodel.hpp"
#include "lfecon/series.hpp"

namespace lfecon {

/// A labour-force projection to feed through the calibrated laws.
struct ForecastScenario {
    std::string name;
    Series lf_path;  // annual levels, strictly positive
};

struct ForecastResult {
    std::string scenario;
    Series inflation_path;
    Series unemployment_path;
    std::string inflation_model_id;
    std::string unemployment_model_id;
};

/// Applies the final segment of each model to the scenario path over
/// [first, last]. The final segment's law is extended past its calibration
/// span; the models must be open-ended for that to be meaningful.
ForecastResult project(const PiecewiseLagModel& inflation_model,
                       const PiecewiseLagModel& unemployment_model,
                       const ForecastScenario& scenario, const Period& first,
                       const Period& last);

}  // namespace lfecon
