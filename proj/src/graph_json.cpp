#include "ctwalk/graph_json.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ctwalk {

namespace {

constexpr index_t max_stored_edges = 2000000;

using ordered_json = nlohmann::ordered_json;

} // namespace

std::string graph_to_json(const ThresholdGraph& g, int indent) {
    ordered_json j;
    j["n"] = g.n();
    j["theta"] = g.theta();
    j["x"] = g.hidden_values();
    j["blocks"]["k"] = g.blocks().k_runs();
    j["blocks"]["l"] = g.blocks().l_runs();
    j["order"] = g.order();
    if (g.edge_count() <= max_stored_edges) {
        ordered_json edges = ordered_json::array();
        for (auto [u, w] : g.edge_list()) edges.push_back({u, w});
        j["edges"] = std::move(edges);
    }
    return j.dump(indent) + "\n";
}

ThresholdGraph graph_from_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("graph json: parse failure: ") + e.what());
    }
    try {
        const index_t n = j.at("n").get<index_t>();
        const double theta = j.at("theta").get<double>();
        auto x = j.at("x").get<std::vector<double>>();
        auto k = j.at("blocks").at("k").get<std::vector<index_t>>();
        auto l = j.at("blocks").at("l").get<std::vector<index_t>>();
        auto order = j.at("order").get<std::vector<index_t>>();
        if (static_cast<index_t>(x.size()) != n)
            throw config_error("graph json: x length != n");
        ThresholdGraph g = ThresholdGraph::from_parts(
            std::move(x), theta, BlockStructure(std::move(k), std::move(l)),
            std::move(order));
        if (j.contains("edges")) {
            auto stored =
                j.at("edges").get<std::vector<std::pair<index_t, index_t>>>();
            if (stored != g.edge_list())
                throw consistency_error(
                    "graph json: stored edges disagree with block layout");
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("graph json: bad schema: ") + e.what());
    }
}

void save_graph(const ThresholdGraph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("graph json: cannot open " + path);
    out << graph_to_json(g);
    if (!out) throw config_error("graph json: write failure on " + path);
}

ThresholdGraph load_graph(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("graph json: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return graph_from_json(buf.str());
}

void write_edge_list(const ThresholdGraph& g, std::ostream& out) {
    for (auto [u, w] : g.edge_list()) out << u << ' ' << w << '\n';
}

} // namespace ctwalk
