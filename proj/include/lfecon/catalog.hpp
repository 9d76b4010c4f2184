#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "lfecon/series.hpp"

namespace lfecon {

struct CatalogEntry {
    std::string file;  // relative to the catalog's directory unless absolute
    Frequency frequency = Frequency::annual;
    std::string units;
    std::string source;
    std::string vintage;
};

/// The bundled data manifest: series id -> file + metadata.
class DataCatalog {
public:
    static DataCatalog load(const std::filesystem::path& path);

    bool has(const std::string& id) const { return entries_.count(id) > 0; }
    const CatalogEntry& entry(const std::string& id) const;
    std::vector<std::string> ids() const;  // sorted

    /// Parse the backing CSV, checking it against the declared frequency.
    Series load_series(const std::string& id) const;

    /// Point an id at a different CSV file (CLI --series override).
    void override_file(const std::string& id, const std::filesystem::path& file);

private:
    std::filesystem::path dir_;
    std::map<std::string, CatalogEntry> entries_;
};

}  // namespace lfecon
