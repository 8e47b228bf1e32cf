#include "basslab/network_json.hpp"

#include <stdexcept>

namespace basslab {

nlohmann::json tag_to_json(const TopologyTag& tag)
{
    nlohmann::json doc;
    doc["kind"] = to_string(tag.kind);
    switch (tag.kind) {
    case TopologyTag::Kind::general: break;
    case TopologyTag::Kind::circle:
    case TopologyTag::Kind::line:
    case TopologyTag::Kind::torus:
    case TopologyTag::Kind::box:
        doc["sided"] = to_string(tag.sided);
        doc["dim"] = tag.dim;
        doc["side"] = tag.side;
        break;
    case TopologyTag::Kind::hybrid_circle_ray:
        doc["circle_size"] = tag.circle_size;
        doc["ray_size"] = tag.ray_size;
        break;
    }
    return doc;
}

TopologyTag tag_from_json(const nlohmann::json& doc)
{
    TopologyTag tag;
    if (doc.is_null()) return tag;
    tag.kind = parse_topology_kind(doc.at("kind").get<std::string>());
    if (doc.contains("sided")) tag.sided = parse_sidedness(doc.at("sided").get<std::string>());
    tag.dim = doc.value("dim", std::size_t{0});
    tag.side = doc.value("side", std::size_t{0});
    tag.circle_size = doc.value("circle_size", std::size_t{0});
    tag.ray_size = doc.value("ray_size", std::size_t{0});
    return tag;
}

nlohmann::json network_to_json(const Network& network)
{
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : network.edges()) edges.push_back({e.source + 1, e.target + 1, e.weight});
    nlohmann::json doc;
    doc["nodes"] = network.size();
    doc["p"] = std::vector<double>(network.external_rates().begin(), network.external_rates().end());
    doc["edges"] = std::move(edges);
    doc["tag"] = tag_to_json(network.tag());
    return doc;
}

Network network_from_json(const nlohmann::json& doc)
{
    const auto nodes = doc.at("nodes").get<std::size_t>();
    auto p = doc.at("p").get<std::vector<double>>();
    if (p.size() != nodes) throw std::invalid_argument("'p' must list one external rate per node");

    std::vector<Edge> edges;
    for (const auto& row : doc.at("edges")) {
        if (!row.is_array() || row.size() != 3) throw std::invalid_argument("each edge must be [i, j, w]");
        const auto i = row[0].get<std::size_t>();
        const auto j = row[1].get<std::size_t>();
        if (i == 0 || j == 0) throw std::invalid_argument("edge endpoints are 1-based");
        edges.push_back(Edge{i - 1, j - 1, row[2].get<double>()});
    }
    return Network(std::move(p), std::move(edges), tag_from_json(doc.value("tag", nlohmann::json{})));
}

}  // namespace basslab
