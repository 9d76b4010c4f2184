#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lfecon/series.hpp"

namespace lfecon {

enum class DriverTransform { growth_rate, identity };

DriverTransform driver_transform_from_string(const std::string& name);
std::string to_string(DriverTransform t);

enum class Objective { cumulative_rms, annual_rms };

Objective objective_from_string(const std::string& name);
std::string to_string(Objective o);

/// One regime of a piecewise law: response(t) = slope * g(t - lag) + intercept
/// for start <= t <= end, with g the transformed driver.
struct Segment {
    Period start;
    Period end;  // inclusive
    int lag = 0; // negative values are leads
    double slope = 0.0;
    double intercept = 0.0;
};

struct PiecewiseLagModel {
    std::string driver_id;
    std::string response_id;
    DriverTransform transform = DriverTransform::growth_rate;
    std::vector<Segment> segments;  // ordered, non-overlapping
    bool open_ended = true;         // final segment's law extends past its end

    const Segment& final_segment() const;
    const Segment* segment_for(const Period& t) const;  // nullptr when uncovered
};

/// One regime of the two-driver law:
/// response(t) = slope_lf * g(t - lag_lf) + slope_ue * ue(t - lag_ue) + intercept.
struct GeneralizedSegment {
    Period start;
    Period end;
    int lag_lf = 1;
    int lag_ue = 1;
    double slope_lf = 0.0;
    double slope_ue = 0.0;
    double intercept = 0.0;
};

struct GeneralizedModel {
    std::string lf_id;
    std::string ue_id;
    std::string response_id;
    DriverTransform transform = DriverTransform::growth_rate;  // applied to lf only
    std::vector<GeneralizedSegment> segments;

    const GeneralizedSegment* segment_for(const Period& t) const;
};

struct GridSpec {
    double min = 0.0;
    double max = 0.0;
    double step = 1.0;
};

/// Pin selected parameters of one segment instead of searching them.
struct SegmentOverride {
    std::optional<int> lag;
    std::optional<double> slope;
    std::optional<double> intercept;
    std::optional<int> lag_ue;        // generalized fit only
    std::optional<double> slope_ue;   // generalized fit only
};

struct CalibrationConfig {
    std::vector<Period> breakpoints;  // each starts a new segment
    DriverTransform transform = DriverTransform::growth_rate;
    int lag_min = -1;
    int lag_max = 3;
    GridSpec slope{-8.0, 8.0, 0.01};
    GridSpec intercept{-0.10, 0.10, 0.0005};
    GridSpec slope_ue{-8.0, 8.0, 0.01};  // second slope of the generalized fit
    bool refine = true;
    Objective objective = Objective::cumulative_rms;
    std::map<int, SegmentOverride> overrides;  // keyed by segment index
};

struct SegmentDiagnostics {
    int segment_index = 0;
    int n_points = 0;
    double objective = 0.0;       // RMS under the configured objective
    double cumulative_rms = 0.0;  // both flavours, whichever was optimized
    double annual_rms = 0.0;
    Series residual;              // observed - predicted over this segment
};

struct CalibrationResult {
    PiecewiseLagModel model;
    std::vector<SegmentDiagnostics> segments;
    Series predicted;
    Series residual;  // observed - predicted over the whole modelled span
};

struct GeneralizedCalibrationResult {
    GeneralizedModel model;
    std::vector<SegmentDiagnostics> segments;
    Series predicted;
    Series residual;
};

/// Evaluate a piecewise model: one value per period across the union of
/// segment spans, missing where no segment applies or the lagged driver is
/// unavailable (each such point is reported through `diagnostics`).
Series predict_piecewise(const PiecewiseLagModel& m, const Series& driver,
                         std::vector<std::string>* diagnostics = nullptr);

Series predict_generalized(const GeneralizedModel& m, const Series& lf, const Series& ue,
                           std::vector<std::string>* diagnostics = nullptr);

/// Fit one (lag, slope, intercept) triple per segment by matching the running
/// sums of observed and predicted response (or the raw values under the
/// annual_rms objective): exhaustive grid scan, deterministic tie-breaking
/// toward smaller |lag| then |slope| then |intercept|, then an optional
/// simplex polish of the continuous parameters that never ends worse than the
/// grid winner.
CalibrationResult calibrate(const Series& driver, const Series& response,
                            const CalibrationConfig& cfg);

GeneralizedCalibrationResult calibrate_generalized(const Series& lf, const Series& ue,
                                                   const Series& response,
                                                   const CalibrationConfig& cfg);

}  // namespace lfecon
