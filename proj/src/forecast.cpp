#include "lfecon/forecast.hpp"

#include <optional>
#include <vector>

#include "lfecon/errors.hpp"

namespace lfecon {

namespace {

void validate_scenario(const ForecastScenario& scenario) {
    if (scenario.lf_path.frequency() != Frequency::annual)
        throw DataError("scenario '" + scenario.name + "': path must be annual");
    for (std::size_t i = 0; i < scenario.lf_path.size(); ++i) {
        const auto& v = scenario.lf_path.value(i);
        if (v && *v <= 0.0)
            throw DataError("scenario '" + scenario.name + "': non-positive level at " +
                            scenario.lf_path.period(i).str());
    }
}

Series project_one(const PiecewiseLagModel& m, const ForecastScenario& scenario,
                   const Period& first, const Period& last, const std::string& id) {
    if (!m.open_ended)
        throw ConfigError("model '" + m.response_id +
                          "' is not open-ended; refusing to extrapolate its final segment");
    const Segment& seg = m.final_segment();
    const Series g = m.transform == DriverTransform::growth_rate
                         ? growth_rate(scenario.lf_path)
                         : scenario.lf_path;

    const int len = periods_between(first, last) + 1;
    if (len < 1) throw ConfigError("forecast horizon ends before it starts");
    std::vector<std::optional<double>> values(len);
    std::string missing;
    for (int t = 0; t < len; ++t) {
        const Period p = add_periods(first, t);
        const auto d = g.at(add_periods(p, -seg.lag));
        if (!d) {
            missing += (missing.empty() ? "" : ", ") + add_periods(p, -seg.lag).str();
            continue;
        }
        values[t] = seg.slope * *d + seg.intercept;
    }
    if (!missing.empty())
        throw DataError("scenario '" + scenario.name + "' does not cover the years " +
                        missing + " needed by model '" + m.response_id + "'");
    return Series(id, Frequency::annual, first, std::move(values), "");
}

}  // namespace

ForecastResult project(const PiecewiseLagModel& inflation_model,
                       const PiecewiseLagModel& unemployment_model,
                       const ForecastScenario& scenario, const Period& first,
                       const Period& last) {
    validate_scenario(scenario);
    Series cpi = project_one(inflation_model, scenario, first, last,
                             inflation_model.response_id + ".forecast." + scenario.name);
    Series ue = project_one(unemployment_model, scenario, first, last,
                            unemployment_model.response_id + ".forecast." + scenario.name);
    return ForecastResult{scenario.name, std::move(cpi), std::move(ue),
                          inflation_model.response_id, unemployment_model.response_id};
}

}  // namespace lfecon
