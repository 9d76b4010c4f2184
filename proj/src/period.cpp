#include "lfecon/period.hpp"

#include <cctype>
#include <cstdio>

#include "lfecon/errors.hpp"

namespace lfecon {

std::string to_string(Frequency f) {
    return f == Frequency::annual ? "annual" : "quarterly";
}

Frequency frequency_from_string(const std::string& s) {
    if (s == "annual") return Frequency::annual;
    if (s == "quarterly") return Frequency::quarterly;
    throw ConfigError("unknown frequency '" + s + "' (expected 'annual' or 'quarterly')");
}

std::string Period::str() const {
    char buf[16];
    if (quarter)
        std::snprintf(buf, sizeof(buf), "%04dQ%d", year, *quarter);
    else
        std::snprintf(buf, sizeof(buf), "%04d", year);
    return buf;
}

Period parse_period(const std::string& text) {
    if (text.size() < 4) throw DataError("malformed period '" + text + "'");
    for (int i = 0; i < 4; ++i)
        if (!std::isdigit(static_cast<unsigned char>(text[i])))
            throw DataError("malformed period '" + text + "'");
    int year = std::stoi(text.substr(0, 4));
    if (text.size() == 4) return Period{year, std::nullopt};
    if (text.size() == 6 && (text[4] == 'Q' || text[4] == 'q') && text[5] >= '1' && text[5] <= '4')
        return Period{year, text[5] - '0'};
    throw DataError("malformed period '" + text + "' (expected YYYY or YYYYQn)");
}

namespace {
void require_same_kind(const Period& a, const Period& b) {
    if (a.is_quarterly() != b.is_quarterly())
        throw DataError("cannot compare annual period " + (a.is_quarterly() ? b : a).str() +
                        " with quarterly period " + (a.is_quarterly() ? a : b).str());
}
}  // namespace

bool period_less(const Period& a, const Period& b) {
    require_same_kind(a, b);
    if (a.year != b.year) return a.year < b.year;
    if (a.quarter) return *a.quarter < *b.quarter;
    return false;
}

Period add_periods(const Period& p, int n) {
    if (!p.quarter) return Period{p.year + n, std::nullopt};
    // Work in zero-based quarter index to keep the arithmetic sign-safe.
    long idx = static_cast<long>(p.year) * 4 + (*p.quarter - 1) + n;
    long year = idx >= 0 ? idx / 4 : (idx - 3) / 4;
    int q = static_cast<int>(idx - year * 4) + 1;
    return Period{static_cast<int>(year), q};
}

int periods_between(const Period& a, const Period& b) {
    require_same_kind(a, b);
    if (!a.quarter) return b.year - a.year;
    return (b.year - a.year) * 4 + (*b.quarter - *a.quarter);
}

}  // namespace lfecon
