#pragma once

#include <iosfwd>
#include <string>

#include "ctwalk/graph.hpp"

namespace ctwalk {

// Serialized fields: n, theta, x (original order), blocks {k, l}, order
// (original index -> canonical position), edges (canonical [u,w] pairs,
// lexicographic; omitted above 2,000,000 edges and rederived on load).
std::string graph_to_json(const ThresholdGraph& g, int indent = 2);

// Rebuilds the graph and revalidates it against the stored values: the
// creation sequence of x must reproduce blocks, every degree must match the
// raw threshold rule, and a present edges array must match the block layout.
ThresholdGraph graph_from_json(const std::string& text);

void save_graph(const ThresholdGraph& g, const std::string& path);
ThresholdGraph load_graph(const std::string& path);

// One "u w" line per edge.
void write_edge_list(const ThresholdGraph& g, std::ostream& out);

} // namespace ctwalk
