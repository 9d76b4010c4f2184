#pragma once

#include <compare>
#include <optional>
#include <string>

namespace lfecon {

enum class Frequency { annual, quarterly };

std::string to_string(Frequency f);
Frequency frequency_from_string(const std::string& s);

/// A point on the time axis: a year, plus a quarter (1..4) for quarterly data.
/// The quarter is present if and only if the owning series is quarterly.
struct Period {
    int year = 0;
    std::optional<int> quarter;

    bool is_quarterly() const { return quarter.has_value(); }

    friend bool operator==(const Period&, const Period&) = default;

    /// Renders "1971" or "1975Q1".
    std::string str() const;
};

/// Parses "YYYY" or "YYYYQn". Throws DataError on anything else.
Period parse_period(const std::string& text);

/// Strict ordering; both periods must be of the same kind (annual vs quarterly).
bool period_less(const Period& a, const Period& b);

/// The period n steps after p (n may be negative).
Period add_periods(const Period& p, int n);

/// Signed number of steps from a to b (b - a); same-kind periods only.
int periods_between(const Period& a, const Period& b);

}  // namespace lfecon
