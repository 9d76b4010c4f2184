#include "lfecon/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "lfecon/errors.hpp"

namespace lfecon {

namespace {

// Clip a series to [start, end] so cumulative() can rebase it.
Series clip(const Series& s, const Period& start, const Period& end) {
    const int len = periods_between(start, end) + 1;
    if (len < 1) throw DataError("clip: empty span");
    std::vector<std::optional<double>> values(len);
    for (int t = 0; t < len; ++t) values[t] = s.at(add_periods(start, t));
    return Series(s.id(), s.frequency(), start, std::move(values), s.units());
}

}  // namespace

double r_squared(const Series& obs, const Series& pred) {
    const auto pairs = align(obs, pred);
    if (pairs.size() < 3)
        throw DataError("r_squared: only " + std::to_string(pairs.size()) +
                        " aligned points, needs at least 3");
    double mean = 0.0;
    for (const auto& p : pairs) mean += p.a;
    mean /= pairs.size();
    double ssr = 0.0, sst = 0.0, scale = 0.0;
    for (const auto& p : pairs) {
        ssr += (p.a - p.b) * (p.a - p.b);
        sst += (p.a - mean) * (p.a - mean);
        scale = std::max(scale, std::fabs(p.a));
    }
    // A constant series seldom produces an exactly zero sum of squares: the
    // running mean picks up rounding, leaving sst at the square of the
    // representation noise.  Treat that as zero variance too.
    const double noise = 1e-12 * scale;
    if (sst <= pairs.size() * noise * noise)
        throw NumericError("r_squared: observed series '" + obs.id() +
                           "' has no variance over the overlap");
    return 1.0 - ssr / sst;
}

double rmsfe(const Series& obs, const Series& pred) {
    const auto pairs = align(obs, pred);
    double sse = 0.0;
    for (const auto& p : pairs) sse += (p.a - p.b) * (p.a - p.b);
    return std::sqrt(sse / pairs.size());
}

double naive_rmsfe(const Series& s, int horizon) {
    if (horizon < 1) throw ConfigError("naive_rmsfe: horizon must be >= 1");
    if (static_cast<int>(s.size()) < horizon + 1)
        throw DataError("naive_rmsfe: series '" + s.id() + "' too short for horizon " +
                        std::to_string(horizon));
    double sse = 0.0;
    int n = 0;
    for (std::size_t t = static_cast<std::size_t>(horizon); t < s.size(); ++t) {
        const auto& cur = s.value(t);
        const auto& base = s.value(t - horizon);
        if (!cur || !base) continue;
        sse += (*cur - *base) * (*cur - *base);
        ++n;
    }
    if (n == 0) throw DataError("naive_rmsfe: no usable pairs in '" + s.id() + "'");
    return std::sqrt(sse / n);
}

Series relative_cumulative_error(const Series& obs, const Series& pred, const Period& base) {
    if (!obs.covers(base))
        throw DataError("relative_cumulative_error: base " + base.str() +
                        " outside observed span");
    const Period end = period_less(obs.end_period(), pred.end_period()) ? obs.end_period()
                                                                        : pred.end_period();
    if (period_less(end, base))
        throw DataError("relative_cumulative_error: no overlap past " + base.str());

    const Series co = cumulative(clip(obs, base, end), base);
    const Series cp = cumulative(clip(pred, base, end), base);
    const int len = periods_between(base, end) + 1;
    std::vector<std::optional<double>> values(len);
    for (int t = 0; t < len; ++t) {
        const auto o = co.value(t);
        const auto p = cp.value(t);
        if (!o || !p || *o == 0.0) continue;  // zero cumulative: ratio undefined
        values[t] = (*o - *p) / *o;
    }
    return Series(obs.id() + ".relative_cumulative_error", obs.frequency(), base,
                  std::move(values), "");
}

namespace {

EvaluationReport build_report(const Series& obs, const Series& pred) {
    const auto pairs = align(obs, pred);
    const Period start = pairs.front().period;
    const Period end = pairs.back().period;

    EvaluationReport report{0.0,
                            0.0,
                            0.0,
                            0.0,
                            relative_cumulative_error(obs, pred, start),
                            start,
                            end};
    report.r2_annual = r_squared(obs, pred);
    report.rmsfe_value = rmsfe(obs, pred);
    report.naive_rmsfe_value = naive_rmsfe(clip(obs, start, end), 1);

    const Series co = cumulative(clip(obs, start, end), start);
    const Series cp = cumulative(clip(pred, start, end), start);
    report.r2_cumulative = r_squared(co, cp);
    return report;
}

}  // namespace

EvaluationReport evaluate_model(const Series& obs, const Series& pred) {
    return build_report(obs, pred);
}

EvaluationReport evaluate_smoothed_ma3(const Series& obs, const Series& pred) {
    return build_report(obs, moving_average(pred, 3));
}

}  // namespace lfecon
