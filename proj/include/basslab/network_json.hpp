#pragma once

#include "basslab/network.hpp"

#include <json.hpp>

namespace basslab {

// Document layout: {"nodes": M, "p": [...], "edges": [[i, j, w], ...], "tag": {...}}.
// Node indices in documents are 1-based; edges are written sorted by (i, j).

nlohmann::json network_to_json(const Network& network);
Network network_from_json(const nlohmann::json& doc);

nlohmann::json tag_to_json(const TopologyTag& tag);
TopologyTag tag_from_json(const nlohmann::json& doc);

}  // namespace basslab
