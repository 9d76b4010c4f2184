#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "lfecon/series.hpp"

namespace lfecon {

/// Parse the `period,value` contract: header line `period,value`, one record
/// per line, period formatted YYYY or YYYYQn, empty value field = missing.
/// Rows must be strictly increasing in time; skipped periods become missing
/// points. `expected` (when given) must match the frequency found in the file.
Series read_series_csv(const std::filesystem::path& path, const std::string& id,
                       std::optional<Frequency> expected = std::nullopt,
                       const std::string& units = "");

/// Same contract from an in-memory buffer; `where` names the source in errors.
Series parse_series_csv(const std::string& text, const std::string& id,
                        const std::string& where,
                        std::optional<Frequency> expected = std::nullopt,
                        const std::string& units = "");

std::string to_csv(const Series& s);

void write_series_csv(const std::filesystem::path& path, const Series& s);

/// Doubles are rendered with enough digits to reparse bit-identically.
std::string format_double(double v);

}  // namespace lfecon
