#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lfecon/period.hpp"

namespace lfecon {

/// A contiguous, frequency-tagged numeric time series. Gaps are explicit
/// missing markers; values are never silently skipped or interpolated.
class Series {
public:
    Series(std::string id, Frequency frequency, Period start,
           std::vector<std::optional<double>> values, std::string units);

    const std::string& id() const { return id_; }
    Frequency frequency() const { return frequency_; }
    const Period& start() const { return start_; }
    const std::string& units() const { return units_; }
    const std::vector<std::optional<double>>& values() const { return values_; }

    std::size_t size() const { return values_.size(); }
    const std::optional<double>& value(std::size_t i) const { return values_.at(i); }
    Period period(std::size_t i) const { return add_periods(start_, static_cast<int>(i)); }
    Period end_period() const { return period(values_.size() - 1); }

    /// Offset of p within the span, or nullopt when p lies outside it.
    std::optional<std::size_t> index_of(const Period& p) const;
    /// Value at p; nullopt when p is outside the span or marked missing.
    std::optional<double> at(const Period& p) const;

    bool covers(const Period& p) const { return index_of(p).has_value(); }
    std::size_t missing_count() const;

private:
    std::string id_;
    Frequency frequency_;
    Period start_;
    std::vector<std::optional<double>> values_;
    std::string units_;
};

/// Convenience constructor for fully observed series.
Series make_series(std::string id, Frequency frequency, Period start,
                   const std::vector<double>& values, std::string units = "");

/// One aligned observation of two series.
struct AlignedPair {
    Period period;
    double a = 0.0;
    double b = 0.0;
};

/// Period-over-period relative change: out(t) = (x(t) - x(t-1)) / x(t-1).
/// Zero or missing denominators yield missing points (with a diagnostic when
/// `diagnostics` is supplied); an all-missing result is an error.
Series growth_rate(const Series& s, std::vector<std::string>* diagnostics = nullptr);

/// First difference: out(t) = x(t) - x(t-1). Missing operands give missing points.
Series diff(const Series& s);

/// Trailing moving average over k points: out(t) = mean(x(t-k+1..t)).
/// A missing value anywhere in a window marks that output point missing.
Series moving_average(const Series& s, std::size_t k);

/// Running sum from `base` onward; the first output equals the value at base.
/// A missing input leaves every later partial sum unknown, so missing markers
/// propagate forward.
Series cumulative(const Series& s, const Period& base);

/// Reindexes so that shifted(t) = s(t - k); k may be negative (a lead).
Series lag_shift(const Series& s, int k);

/// Overlapping span of two same-frequency series, keeping only points where
/// both values are present. Empty overlap is an error.
std::vector<AlignedPair> align(const Series& a, const Series& b);

/// The observed values as one contiguous block, trimming leading and trailing
/// missing markers. An embedded gap is an error: tests that regress on lags
/// cannot bridge one honestly.
std::vector<double> contiguous_observed(const Series& s);

}  // namespace lfecon
