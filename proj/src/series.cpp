#include "lfecon/series.hpp"

#include <algorithm>
#include <cmath>

#include "lfecon/errors.hpp"

namespace lfecon {

Series::Series(std::string id, Frequency frequency, Period start,
               std::vector<std::optional<double>> values, std::string units)
    : id_(std::move(id)),
      frequency_(frequency),
      start_(start),
      values_(std::move(values)),
      units_(std::move(units)) {
    if (values_.empty()) throw DataError("series '" + id_ + "': length must be >= 1");
    bool quarterly = frequency_ == Frequency::quarterly;
    if (start_.is_quarterly() != quarterly)
        throw DataError("series '" + id_ + "': start period " + start_.str() +
                        " does not match declared frequency " + to_string(frequency_));
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (values_[i] && !std::isfinite(*values_[i]))
            throw DataError("series '" + id_ + "': non-finite value at " + period(i).str());
    }
}

std::optional<std::size_t> Series::index_of(const Period& p) const {
    if (p.is_quarterly() != start_.is_quarterly()) return std::nullopt;
    int off = periods_between(start_, p);
    if (off < 0 || static_cast<std::size_t>(off) >= values_.size()) return std::nullopt;
    return static_cast<std::size_t>(off);
}

std::optional<double> Series::at(const Period& p) const {
    auto idx = index_of(p);
    if (!idx) return std::nullopt;
    return values_[*idx];
}

std::size_t Series::missing_count() const {
    return static_cast<std::size_t>(
        std::count_if(values_.begin(), values_.end(),
                      [](const std::optional<double>& v) { return !v.has_value(); }));
}

Series make_series(std::string id, Frequency frequency, Period start,
                   const std::vector<double>& values, std::string units) {
    std::vector<std::optional<double>> v(values.begin(), values.end());
    return Series(std::move(id), frequency, start, std::move(v), std::move(units));
}

Series growth_rate(const Series& s, std::vector<std::string>* diagnostics) {
    if (s.size() < 2) throw DataError("growth_rate: series '" + s.id() + "' needs >= 2 values");
    std::vector<std::optional<double>> out(s.size() - 1);
    std::size_t present = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        const auto& prev = s.value(i - 1);
        const auto& cur = s.value(i);
        if (!prev || !cur) {
            if (diagnostics)
                diagnostics->push_back("growth_rate: missing operand at " + s.period(i).str());
            continue;
        }
        if (*prev == 0.0) {
            if (diagnostics)
                diagnostics->push_back("growth_rate: zero denominator at " + s.period(i - 1).str());
            continue;
        }
        out[i - 1] = (*cur - *prev) / *prev;
        ++present;
    }
    if (present == 0)
        throw DataError("growth_rate: series '" + s.id() + "' produced no computable points");
    return Series(s.id() + ".growth", s.frequency(), s.period(1), std::move(out),
                  "rate per period");
}

Series diff(const Series& s) {
    if (s.size() < 2) throw DataError("diff: series '" + s.id() + "' needs >= 2 values");
    std::vector<std::optional<double>> out(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) {
        const auto& prev = s.value(i - 1);
        const auto& cur = s.value(i);
        if (prev && cur) out[i - 1] = *cur - *prev;
    }
    return Series(s.id() + ".diff", s.frequency(), s.period(1), std::move(out), s.units());
}

Series moving_average(const Series& s, std::size_t k) {
    if (k < 1) throw DataError("moving_average: window must be >= 1");
    if (k > s.size())
        throw DataError("moving_average: window " + std::to_string(k) + " exceeds length " +
                        std::to_string(s.size()) + " of series '" + s.id() + "'");
    std::vector<std::optional<double>> out(s.size() - k + 1);
    for (std::size_t t = k - 1; t < s.size(); ++t) {
        double sum = 0.0;
        bool complete = true;
        for (std::size_t j = t + 1 - k; j <= t; ++j) {
            if (!s.value(j)) {
                complete = false;
                break;
            }
            sum += *s.value(j);
        }
        if (complete) out[t - (k - 1)] = sum / static_cast<double>(k);
    }
    return Series(s.id() + ".ma" + std::to_string(k), s.frequency(),
                  s.period(k - 1), std::move(out), s.units());
}

Series cumulative(const Series& s, const Period& base) {
    auto idx = s.index_of(base);
    if (!idx)
        throw DataError("cumulative: base " + base.str() + " outside span of series '" + s.id() +
                        "'");
    std::vector<std::optional<double>> out(s.size() - *idx);
    double sum = 0.0;
    bool known = true;
    for (std::size_t i = *idx; i < s.size(); ++i) {
        if (!s.value(i)) known = false;
        if (known) {
            sum += *s.value(i);
            out[i - *idx] = sum;
        }
    }
    return Series(s.id() + ".cum", s.frequency(), base, std::move(out), s.units());
}

Series lag_shift(const Series& s, int k) {
    if (static_cast<std::size_t>(std::abs(k)) >= s.size())
        throw DataError("lag_shift: |lag| " + std::to_string(std::abs(k)) +
                        " must be smaller than length " + std::to_string(s.size()));
    return Series(s.id(), s.frequency(), add_periods(s.start(), k),
                  s.values(), s.units());
}

std::vector<AlignedPair> align(const Series& a, const Series& b) {
    if (a.frequency() != b.frequency())
        throw DataError("align: series '" + a.id() + "' and '" + b.id() +
                        "' have different frequencies");
    const Period lo = period_less(a.start(), b.start()) ? b.start() : a.start();
    const Period hi = period_less(a.end_period(), b.end_period()) ? a.end_period() : b.end_period();
    std::vector<AlignedPair> pairs;
    if (!period_less(hi, lo)) {
        for (Period p = lo; !period_less(hi, p); p = add_periods(p, 1)) {
            auto va = a.at(p);
            auto vb = b.at(p);
            if (va && vb) pairs.push_back({p, *va, *vb});
        }
    }
    if (pairs.empty())
        throw DataError("align: series '" + a.id() + "' and '" + b.id() +
                        "' have no overlapping observed span");
    return pairs;
}

std::vector<double> contiguous_observed(const Series& s) {
    std::size_t first = 0;
    while (first < s.size() && !s.value(first)) ++first;
    if (first == s.size())
        throw DataError("series '" + s.id() + "' has no observed values");
    std::size_t last = s.size();
    while (last > first && !s.value(last - 1)) --last;
    std::vector<double> out;
    out.reserve(last - first);
    for (std::size_t i = first; i < last; ++i) {
        const auto& v = s.value(i);
        if (!v)
            throw DataError("series '" + s.id() + "' has an internal gap at " +
                            s.period(i).str());
        out.push_back(*v);
    }
    return out;
}

}  // namespace lfecon
