#include "lfecon/lagmodel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>

#include <Eigen/Dense>

#include "lfecon/errors.hpp"
#include "lfecon/simplex.hpp"

namespace lfecon {

namespace {

constexpr int kMinUsablePoints = 5;

bool in_span(const Period& t, const Period& start, const Period& end) {
    return !period_less(t, start) && !period_less(end, t);
}

Series apply_transform(DriverTransform t, const Series& s) {
    return t == DriverTransform::growth_rate ? growth_rate(s) : s;
}

std::vector<double> grid_values(const GridSpec& g, const char* what) {
    if (!(g.step > 0.0) || !std::isfinite(g.step))
        throw ConfigError(std::string(what) + " grid: step must be positive and finite");
    if (!std::isfinite(g.min) || !std::isfinite(g.max) || g.max < g.min)
        throw ConfigError(std::string(what) + " grid: bad range");
    const int count = static_cast<int>(std::floor((g.max - g.min) / g.step + 0.5)) + 1;
    std::vector<double> values;
    values.reserve(count);
    for (int j = 0; j < count; ++j) values.push_back(g.min + j * g.step);
    return values;
}

// ||y - X p||^2 written as A - 2 b.p + p'Mp so each grid cell costs O(k^2).
struct QuadraticObjective {
    double A = 0.0;
    Eigen::VectorXd b;
    Eigen::MatrixXd M;
    int n = 0;

    double sse(const Eigen::VectorXd& p) const {
        return A - 2.0 * b.dot(p) + p.dot(M * p);
    }
};

// Columns are the regressors (driver terms and a trailing column of ones).
// Under the cumulative objective every column and the target are replaced by
// their running sums, which is what lets measurement noise cancel instead of
// pile up.
QuadraticObjective make_objective(const std::vector<double>& target,
                                  std::vector<std::vector<double>> cols, bool cumulative) {
    const int n = static_cast<int>(target.size());
    const int k = static_cast<int>(cols.size());
    std::vector<double> y = target;
    if (cumulative) {
        for (int t = 1; t < n; ++t) y[t] += y[t - 1];
        for (auto& c : cols)
            for (int t = 1; t < n; ++t) c[t] += c[t - 1];
    }
    QuadraticObjective q;
    q.n = n;
    q.b = Eigen::VectorXd::Zero(k);
    q.M = Eigen::MatrixXd::Zero(k, k);
    for (int t = 0; t < n; ++t) q.A += y[t] * y[t];
    for (int a = 0; a < k; ++a) {
        for (int t = 0; t < n; ++t) q.b(a) += cols[a][t] * y[t];
        for (int c = a; c < k; ++c) {
            double acc = 0.0;
            for (int t = 0; t < n; ++t) acc += cols[a][t] * cols[c][t];
            q.M(a, c) = acc;
            q.M(c, a) = acc;
        }
    }
    return q;
}

double direct_sse(const std::vector<double>& target, const std::vector<std::vector<double>>& cols,
                  const Eigen::VectorXd& p, bool cumulative) {
    const int n = static_cast<int>(target.size());
    double sse = 0.0, running = 0.0;
    for (int t = 0; t < n; ++t) {
        double pred = 0.0;
        for (int a = 0; a < static_cast<int>(cols.size()); ++a) pred += p(a) * cols[a][t];
        const double e = target[t] - pred;
        if (cumulative) {
            running += e;  // cum(obs) - cum(pred) telescopes to the error sum
            sse += running * running;
        } else {
            sse += e * e;
        }
    }
    return sse;
}

double direct_rms(const std::vector<double>& target, const std::vector<std::vector<double>>& cols,
                  const Eigen::VectorXd& p, bool cumulative) {
    return std::sqrt(direct_sse(target, cols, p, cumulative) /
                     static_cast<double>(target.size()));
}

// Deterministic preference order among equal-objective candidates: smaller
// lag magnitudes, then smaller coefficient magnitudes, then signed values.
using TieKey = std::array<double, 10>;

TieKey tie_key(int lag1, int lag2, double s1, double s2, double i) {
    return {std::abs(static_cast<double>(lag1)), std::abs(static_cast<double>(lag2)),
            std::abs(s1), std::abs(s2), std::abs(i),
            static_cast<double>(lag1), static_cast<double>(lag2), s1, s2, i};
}

struct Candidate {
    double sse = std::numeric_limits<double>::infinity();
    TieKey key{};
    int lag1 = 0, lag2 = 0;
    Eigen::VectorXd p;  // coefficients in column order
    bool found = false;

    void offer(double obj_sse, const TieKey& k, int l1, int l2, const Eigen::VectorXd& coef) {
        if (!found || obj_sse < sse || (obj_sse == sse && k < key)) {
            sse = obj_sse;
            key = k;
            lag1 = l1;
            lag2 = l2;
            p = coef;
            found = true;
        }
    }
};

struct ObservedSpan {
    Period first;
    Period last;
};

ObservedSpan observed_span(const Series& s) {
    std::size_t lo = 0;
    while (lo < s.size() && !s.value(lo)) ++lo;
    if (lo == s.size()) throw DataError("series '" + s.id() + "' has no observed values");
    std::size_t hi = s.size() - 1;
    while (hi > lo && !s.value(hi)) --hi;
    return {s.period(lo), s.period(hi)};
}

struct SegmentSpan {
    Period start;
    Period end;
};

std::vector<SegmentSpan> segment_spans(const Series& response,
                                       const std::vector<Period>& breakpoints) {
    const ObservedSpan span = observed_span(response);
    std::vector<Period> starts{span.first};
    for (const Period& bp : breakpoints) {
        if (!period_less(span.first, bp) || period_less(span.last, bp))
            throw ConfigError("breakpoint " + bp.str() + " is outside the response span " +
                              span.first.str() + ".." + span.last.str());
        if (!period_less(starts.back(), bp))
            throw ConfigError("breakpoints must be strictly increasing");
        starts.push_back(bp);
    }
    std::vector<SegmentSpan> spans;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        const Period end =
            i + 1 < starts.size() ? add_periods(starts[i + 1], -1) : span.last;
        spans.push_back({starts[i], end});
    }
    return spans;
}

Series residual_over(const Series& obs, const Series& pred, const Period& start,
                     const Period& end, const std::string& id) {
    const int len = periods_between(start, end) + 1;
    std::vector<std::optional<double>> values(len);
    for (int t = 0; t < len; ++t) {
        const Period p = add_periods(start, t);
        const auto o = obs.at(p);
        const auto f = pred.at(p);
        if (o && f) values[t] = *o - *f;
    }
    return Series(id, obs.frequency(), start, std::move(values), obs.units());
}

const SegmentOverride* find_override(const CalibrationConfig& cfg, int index, int nseg) {
    for (const auto& [key, value] : cfg.overrides)
        if (key < 0 || key >= nseg)
            throw ConfigError("segment override index " + std::to_string(key) +
                              " out of range (model has " + std::to_string(nseg) +
                              " segments)");
    auto it = cfg.overrides.find(index);
    return it == cfg.overrides.end() ? nullptr : &it->second;
}

std::vector<int> lag_candidates(const CalibrationConfig& cfg, std::optional<int> fixed) {
    if (fixed) return {*fixed};
    if (cfg.lag_min > cfg.lag_max) throw ConfigError("lag range is empty");
    std::vector<int> lags;
    for (int l = cfg.lag_min; l <= cfg.lag_max; ++l) lags.push_back(l);
    return lags;
}

std::vector<double> axis_values(const GridSpec& grid, std::optional<double> fixed,
                                const char* what) {
    if (fixed) return {*fixed};
    return grid_values(grid, what);
}

// Points usable for one segment at one lag choice: response and every lagged
// regressor present. `cols` excludes the trailing ones column until the end.
struct UsableData {
    std::vector<double> obs;
    std::vector<std::vector<double>> cols;
    QuadraticObjective quad;
};

// Polish the free coefficients with the downhill simplex, keeping the grid
// winner whenever the polish does not improve on it. The grid scan ranks
// cells through the O(1) moment expansion, whose cancellation error caps the
// resolution near a perfect fit; the polish therefore re-evaluates the sum of
// squares directly, which stays accurate all the way down.
void refine_coefficients(const UsableData& data, bool cumulative,
                         const std::vector<int>& free_axes,
                         const std::vector<double>& scales, Candidate& best) {
    if (free_axes.empty()) return;
    best.sse = direct_sse(data.obs, data.cols, best.p, cumulative);
    Eigen::VectorXd start(free_axes.size()), scale(free_axes.size());
    for (std::size_t a = 0; a < free_axes.size(); ++a) {
        start(a) = best.p(free_axes[a]);
        scale(a) = scales[a];
    }
    Eigen::VectorXd full = best.p;
    const auto objective = [&](const Eigen::VectorXd& x) {
        Eigen::VectorXd probe = full;
        for (std::size_t a = 0; a < free_axes.size(); ++a) probe(free_axes[a]) = x(a);
        return direct_sse(data.obs, data.cols, probe, cumulative);
    };
    const SimplexResult polished = nelder_mead(objective, start, scale);
    if (polished.value <= best.sse) {
        for (std::size_t a = 0; a < free_axes.size(); ++a)
            full(free_axes[a]) = polished.x(a);
        best.p = full;
        best.sse = polished.value;
    }
}

SegmentDiagnostics make_diagnostics(int index, const UsableData& data, const Candidate& best,
                                    bool cumulative, Series residual) {
    SegmentDiagnostics d{index,
                         static_cast<int>(data.obs.size()),
                         0.0,
                         direct_rms(data.obs, data.cols, best.p, true),
                         direct_rms(data.obs, data.cols, best.p, false),
                         std::move(residual)};
    d.objective = cumulative ? d.cumulative_rms : d.annual_rms;
    return d;
}

}  // namespace

DriverTransform driver_transform_from_string(const std::string& name) {
    if (name == "growth_rate") return DriverTransform::growth_rate;
    if (name == "identity") return DriverTransform::identity;
    throw ConfigError("unknown driver transform '" + name +
                      "' (expected growth_rate or identity)");
}

std::string to_string(DriverTransform t) {
    return t == DriverTransform::growth_rate ? "growth_rate" : "identity";
}

Objective objective_from_string(const std::string& name) {
    if (name == "cumulative_rms") return Objective::cumulative_rms;
    if (name == "annual_rms") return Objective::annual_rms;
    throw ConfigError("unknown objective '" + name +
                      "' (expected cumulative_rms or annual_rms)");
}

std::string to_string(Objective o) {
    return o == Objective::cumulative_rms ? "cumulative_rms" : "annual_rms";
}

const Segment& PiecewiseLagModel::final_segment() const {
    if (segments.empty()) throw ConfigError("model '" + response_id + "' has no segments");
    return segments.back();
}

const Segment* PiecewiseLagModel::segment_for(const Period& t) const {
    for (const Segment& s : segments)
        if (in_span(t, s.start, s.end)) return &s;
    return nullptr;
}

const GeneralizedSegment* GeneralizedModel::segment_for(const Period& t) const {
    for (const GeneralizedSegment& s : segments)
        if (in_span(t, s.start, s.end)) return &s;
    return nullptr;
}

Series predict_piecewise(const PiecewiseLagModel& m, const Series& driver,
                         std::vector<std::string>* diagnostics) {
    if (m.segments.empty()) throw ConfigError("predict: model has no segments");
    const Series g = apply_transform(m.transform, driver);
    const Period start = m.segments.front().start;
    const Period end = m.segments.back().end;
    const int len = periods_between(start, end) + 1;

    std::vector<std::optional<double>> values(len);
    for (int t = 0; t < len; ++t) {
        const Period p = add_periods(start, t);
        const Segment* seg = m.segment_for(p);
        if (!seg) continue;  // between segments: intentionally unmodelled
        const auto d = g.at(add_periods(p, -seg->lag));
        if (!d) {
            if (diagnostics)
                diagnostics->push_back("no driver value for " + p.str() + " (needs " +
                                       add_periods(p, -seg->lag).str() + ")");
            continue;
        }
        values[t] = seg->slope * *d + seg->intercept;
    }
    return Series(m.response_id + ".predicted", driver.frequency(), start, std::move(values),
                  "");
}

Series predict_generalized(const GeneralizedModel& m, const Series& lf, const Series& ue,
                           std::vector<std::string>* diagnostics) {
    if (m.segments.empty()) throw ConfigError("predict: model has no segments");
    const Series g = apply_transform(m.transform, lf);
    const Period start = m.segments.front().start;
    const Period end = m.segments.back().end;
    const int len = periods_between(start, end) + 1;

    std::vector<std::optional<double>> values(len);
    for (int t = 0; t < len; ++t) {
        const Period p = add_periods(start, t);
        const GeneralizedSegment* seg = m.segment_for(p);
        if (!seg) continue;
        const auto d1 = g.at(add_periods(p, -seg->lag_lf));
        const auto d2 = ue.at(add_periods(p, -seg->lag_ue));
        if (!d1 || !d2) {
            if (diagnostics)
                diagnostics->push_back("missing driver value for " + p.str());
            continue;
        }
        values[t] = seg->slope_lf * *d1 + seg->slope_ue * *d2 + seg->intercept;
    }
    return Series(m.response_id + ".predicted", lf.frequency(), start, std::move(values), "");
}

CalibrationResult calibrate(const Series& driver, const Series& response,
                            const CalibrationConfig& cfg) {
    const Series g = apply_transform(cfg.transform, driver);
    const auto spans = segment_spans(response, cfg.breakpoints);
    const int nseg = static_cast<int>(spans.size());
    const bool cumulative = cfg.objective == Objective::cumulative_rms;

    PiecewiseLagModel model;
    model.driver_id = driver.id();
    model.response_id = response.id();
    model.transform = cfg.transform;

    std::vector<SegmentDiagnostics> diags;
    for (int si = 0; si < nseg; ++si) {
        const SegmentSpan& span = spans[si];
        const SegmentOverride* ov = find_override(cfg, si, nseg);
        const auto lags = lag_candidates(cfg, ov ? ov->lag : std::nullopt);
        const auto slopes = axis_values(cfg.slope, ov ? ov->slope : std::nullopt, "slope");
        const auto intercepts =
            axis_values(cfg.intercept, ov ? ov->intercept : std::nullopt, "intercept");

        Candidate best;
        std::map<int, UsableData> by_lag;
        const int span_len = periods_between(span.start, span.end) + 1;
        for (int lag : lags) {
            UsableData data;
            data.cols.assign(2, {});
            for (int t = 0; t < span_len; ++t) {
                const Period p = add_periods(span.start, t);
                const auto o = response.at(p);
                const auto d = g.at(add_periods(p, -lag));
                if (!o || !d) continue;
                data.obs.push_back(*o);
                data.cols[0].push_back(*d);
                data.cols[1].push_back(1.0);
            }
            if (static_cast<int>(data.obs.size()) < kMinUsablePoints) continue;
            data.quad = make_objective(data.obs, data.cols, cumulative);
            const auto& q = data.quad;
            // Lags can differ in usable-point counts, so the race across lags
            // compares mean squared error (monotone in RMS), not raw SSE.
            const double inv_n = 1.0 / static_cast<double>(data.obs.size());

            Eigen::VectorXd p(2);
            for (double s : slopes) {
                // Expand the quadratic in the intercept so the inner loop is flat.
                const double c0 = q.A - 2.0 * q.b(0) * s + q.M(0, 0) * s * s;
                const double c1 = -2.0 * q.b(1) + 2.0 * q.M(0, 1) * s;
                for (double i : intercepts) {
                    const double mse = (c0 + c1 * i + q.M(1, 1) * i * i) * inv_n;
                    if (mse > best.sse) continue;
                    p(0) = s;
                    p(1) = i;
                    best.offer(mse, tie_key(lag, 0, s, 0.0, i), lag, 0, p);
                }
            }
            by_lag.emplace(lag, std::move(data));
        }
        if (!best.found)
            throw DataError("segment " + span.start.str() + ".." + span.end.str() +
                            ": fewer than " + std::to_string(kMinUsablePoints) +
                            " usable points at every candidate lag");

        const UsableData& chosen = by_lag.at(best.lag1);
        if (cfg.refine) {
            std::vector<int> free_axes;
            std::vector<double> scales;
            if (!(ov && ov->slope)) {
                free_axes.push_back(0);
                scales.push_back(cfg.slope.step);
            }
            if (!(ov && ov->intercept)) {
                free_axes.push_back(1);
                scales.push_back(cfg.intercept.step);
            }
            refine_coefficients(chosen, cumulative, free_axes, scales, best);
        }

        Segment seg;
        seg.start = span.start;
        seg.end = span.end;
        seg.lag = best.lag1;
        seg.slope = best.p(0);
        seg.intercept = best.p(1);
        model.segments.push_back(seg);

        // Residual over the segment at the chosen parameters.
        std::vector<std::optional<double>> res(span_len);
        for (int t = 0; t < span_len; ++t) {
            const Period p = add_periods(span.start, t);
            const auto o = response.at(p);
            const auto d = g.at(add_periods(p, -seg.lag));
            if (o && d) res[t] = *o - (seg.slope * *d + seg.intercept);
        }
        Series seg_residual(response.id() + ".residual.seg" + std::to_string(si),
                            response.frequency(), span.start, std::move(res),
                            response.units());
        diags.push_back(
            make_diagnostics(si, chosen, best, cumulative, std::move(seg_residual)));
    }

    Series predicted = predict_piecewise(model, driver);
    Series residual = residual_over(response, predicted, spans.front().start,
                                    spans.back().end, response.id() + ".residual");
    return CalibrationResult{std::move(model), std::move(diags), std::move(predicted),
                             std::move(residual)};
}

GeneralizedCalibrationResult calibrate_generalized(const Series& lf, const Series& ue,
                                                   const Series& response,
                                                   const CalibrationConfig& cfg) {
    const Series g = apply_transform(cfg.transform, lf);
    const auto spans = segment_spans(response, cfg.breakpoints);
    const int nseg = static_cast<int>(spans.size());
    const bool cumulative = cfg.objective == Objective::cumulative_rms;

    GeneralizedModel model;
    model.lf_id = lf.id();
    model.ue_id = ue.id();
    model.response_id = response.id();
    model.transform = cfg.transform;

    std::vector<SegmentDiagnostics> diags;
    for (int si = 0; si < nseg; ++si) {
        const SegmentSpan& span = spans[si];
        const SegmentOverride* ov = find_override(cfg, si, nseg);
        const auto lags_lf = lag_candidates(cfg, ov ? ov->lag : std::nullopt);
        const auto lags_ue = lag_candidates(cfg, ov ? ov->lag_ue : std::nullopt);
        const auto slopes_lf = axis_values(cfg.slope, ov ? ov->slope : std::nullopt, "slope");
        const auto slopes_ue =
            axis_values(cfg.slope_ue, ov ? ov->slope_ue : std::nullopt, "slope_ue");
        const auto intercepts =
            axis_values(cfg.intercept, ov ? ov->intercept : std::nullopt, "intercept");

        Candidate best;
        std::map<std::pair<int, int>, UsableData> by_lag;
        const int span_len = periods_between(span.start, span.end) + 1;
        for (int lag1 : lags_lf) {
            for (int lag2 : lags_ue) {
                UsableData data;
                data.cols.assign(3, {});
                for (int t = 0; t < span_len; ++t) {
                    const Period p = add_periods(span.start, t);
                    const auto o = response.at(p);
                    const auto d1 = g.at(add_periods(p, -lag1));
                    const auto d2 = ue.at(add_periods(p, -lag2));
                    if (!o || !d1 || !d2) continue;
                    data.obs.push_back(*o);
                    data.cols[0].push_back(*d1);
                    data.cols[1].push_back(*d2);
                    data.cols[2].push_back(1.0);
                }
                if (static_cast<int>(data.obs.size()) < kMinUsablePoints) continue;
                data.quad = make_objective(data.obs, data.cols, cumulative);
                const auto& q = data.quad;
                // Same normalization as the single-driver race: lag pairs can
                // cover different usable spans, so compare mean squared error.
                const double inv_n = 1.0 / static_cast<double>(data.obs.size());

                Eigen::VectorXd p(3);
                for (double s1 : slopes_lf) {
                    const double a1 = q.A - 2.0 * q.b(0) * s1 + q.M(0, 0) * s1 * s1;
                    for (double s2 : slopes_ue) {
                        const double c0 = a1 - 2.0 * q.b(1) * s2 + q.M(1, 1) * s2 * s2 +
                                          2.0 * q.M(0, 1) * s1 * s2;
                        const double c1 =
                            -2.0 * q.b(2) + 2.0 * q.M(0, 2) * s1 + 2.0 * q.M(1, 2) * s2;
                        for (double i : intercepts) {
                            const double mse = (c0 + c1 * i + q.M(2, 2) * i * i) * inv_n;
                            if (mse > best.sse) continue;
                            p(0) = s1;
                            p(1) = s2;
                            p(2) = i;
                            best.offer(mse, tie_key(lag1, lag2, s1, s2, i), lag1, lag2, p);
                        }
                    }
                }
                by_lag.emplace(std::make_pair(lag1, lag2), std::move(data));
            }
        }
        if (!best.found)
            throw DataError("segment " + span.start.str() + ".." + span.end.str() +
                            ": fewer than " + std::to_string(kMinUsablePoints) +
                            " usable points at every candidate lag pair");

        const UsableData& chosen = by_lag.at({best.lag1, best.lag2});
        if (cfg.refine) {
            std::vector<int> free_axes;
            std::vector<double> scales;
            if (!(ov && ov->slope)) {
                free_axes.push_back(0);
                scales.push_back(cfg.slope.step);
            }
            if (!(ov && ov->slope_ue)) {
                free_axes.push_back(1);
                scales.push_back(cfg.slope_ue.step);
            }
            if (!(ov && ov->intercept)) {
                free_axes.push_back(2);
                scales.push_back(cfg.intercept.step);
            }
            refine_coefficients(chosen, cumulative, free_axes, scales, best);
        }

        GeneralizedSegment seg;
        seg.start = span.start;
        seg.end = span.end;
        seg.lag_lf = best.lag1;
        seg.lag_ue = best.lag2;
        seg.slope_lf = best.p(0);
        seg.slope_ue = best.p(1);
        seg.intercept = best.p(2);
        model.segments.push_back(seg);

        std::vector<std::optional<double>> res(span_len);
        for (int t = 0; t < span_len; ++t) {
            const Period p = add_periods(span.start, t);
            const auto o = response.at(p);
            const auto d1 = g.at(add_periods(p, -seg.lag_lf));
            const auto d2 = ue.at(add_periods(p, -seg.lag_ue));
            if (o && d1 && d2)
                res[t] = *o - (seg.slope_lf * *d1 + seg.slope_ue * *d2 + seg.intercept);
        }
        Series seg_residual(response.id() + ".residual.seg" + std::to_string(si),
                            response.frequency(), span.start, std::move(res),
                            response.units());
        diags.push_back(
            make_diagnostics(si, chosen, best, cumulative, std::move(seg_residual)));
    }

    Series predicted = predict_generalized(model, lf, ue);
    Series residual = residual_over(response, predicted, spans.front().start,
                                    spans.back().end, response.id() + ".residual");
    return GeneralizedCalibrationResult{std::move(model), std::move(diags),
                                        std::move(predicted), std::move(residual)};
}

}  // namespace lfecon
