#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include "lfecon/lagmodel.hpp"

namespace lfecon {

using AnyModel = std::variant<PiecewiseLagModel, GeneralizedModel>;

/// Plain-text model format, version header `lfecon-model v1`. Coefficients
/// are written with full precision so save -> load -> predict is bit-identical.
std::string model_to_text(const AnyModel& m);
AnyModel model_from_text(const std::string& text, const std::string& where);

void save_model(const std::filesystem::path& path, const AnyModel& m);
AnyModel load_model(const std::filesystem::path& path);

}  // namespace lfecon
