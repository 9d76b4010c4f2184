#include "lfecon/catalog.hpp"

#include <fstream>

#include <json.hpp>

#include "lfecon/csv_io.hpp"
#include "lfecon/errors.hpp"

namespace lfecon {

using nlohmann::json;

DataCatalog DataCatalog::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open catalog '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("catalog '" + path.string() + "': " + e.what());
    }

    DataCatalog catalog;
    catalog.dir_ = path.parent_path();
    try {
        if (doc.at("version").get<int>() != 1)
            throw ConfigError("catalog '" + path.string() + "': unsupported version");
        for (const auto& [id, spec] : doc.at("series").items()) {
            CatalogEntry entry;
            entry.file = spec.at("file").get<std::string>();
            entry.frequency = frequency_from_string(spec.at("frequency").get<std::string>());
            entry.units = spec.value("units", "");
            entry.source = spec.value("source", "");
            entry.vintage = spec.value("vintage", "");
            catalog.entries_.emplace(id, std::move(entry));
        }
    } catch (const json::exception& e) {
        throw ConfigError("catalog '" + path.string() + "': " + e.what());
    }
    if (catalog.entries_.empty())
        throw ConfigError("catalog '" + path.string() + "': no series declared");
    return catalog;
}

const CatalogEntry& DataCatalog::entry(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end())
        throw ConfigError("series '" + id + "' is not in the catalog");
    return it->second;
}

std::vector<std::string> DataCatalog::ids() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& [id, _] : entries_) out.push_back(id);
    return out;  // std::map iterates in sorted order
}

Series DataCatalog::load_series(const std::string& id) const {
    const CatalogEntry& e = entry(id);
    std::filesystem::path file(e.file);
    if (file.is_relative()) file = dir_ / file;
    return read_series_csv(file, id, e.frequency, e.units);
}

void DataCatalog::override_file(const std::string& id, const std::filesystem::path& file) {
    auto it = entries_.find(id);
    if (it == entries_.end())
        throw ConfigError("--series override names unknown id '" + id + "'");
    it->second.file = std::filesystem::absolute(file).string();
}

}  // namespace lfecon
