#pragma once

#include "hlab/group.hpp"

#include <json.hpp>

namespace hlab {

nlohmann::json to_json(const Model& model);
Model model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const GroupElement& g);
GroupElement group_element_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

} // namespace hlab
