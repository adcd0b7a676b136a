#pragma once

#include <string>

#include <json.hpp>

namespace qdl {

// Pinned lattice geometries (versioned JSON) for the reproducible experiments.
// Names: "braid", "creation", "s3_qubit".
const nlohmann::json& fixture(const std::string& name);

}  // namespace qdl
