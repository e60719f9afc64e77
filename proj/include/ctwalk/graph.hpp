#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ctwalk/errors.hpp"

namespace ctwalk {

using index_t = std::int64_t;

enum class Distribution { bernoulli, uniform, explicit_values };

// How the hidden vertex values X_1..X_n are produced. Vertices u,w are
// adjacent iff X_u + X_w > theta (strict; ties are non-edges).
struct HiddenVariableConfig {
    index_t n = 0;
    Distribution dist = Distribution::bernoulli;
    double p = 0.5;              // bernoulli success probability
    double lo = 0.0;             // uniform support [lo, hi)
    double hi = 1.0;
    std::vector<double> values;  // used when dist == explicit_values
    double theta = 0.0;
    std::uint64_t seed = 0;

    static HiddenVariableConfig bernoulli(index_t n, double p, double theta,
                                          std::uint64_t seed);
    static HiddenVariableConfig uniform(index_t n, double lo, double hi,
                                        double theta, std::uint64_t seed);
    static HiddenVariableConfig explicit_values(std::vector<double> values,
                                                double theta);

    void validate() const; // throws config_error
};

// Run-length form of a creation sequence 1^{k_1} 0^{l_1} ... 1^{k_m} 0^{l_m}.
// Level i holds a clique part of k_i vertices and a null part of l_i vertices.
// Valid shapes: k_i >= 1 for i >= 2, l_i >= 1 for i <= m-1, and either
// k_1 == 0 with l_1 >= 2 or k_1 >= 2 (single-vertex graphs, k = (1), are the
// one allowed exception).
class BlockStructure {
public:
    BlockStructure(std::vector<index_t> k, std::vector<index_t> l);

    static BlockStructure from_sequence(const std::vector<int>& bits);
    std::vector<int> to_sequence() const;

    index_t levels() const { return m_; }
    index_t size() const { return n_; }

    // Accessors take 1-based levels i in [1, levels()].
    index_t k(index_t i) const { return k_[check(i) - 1]; }
    index_t l(index_t i) const { return l_[check(i) - 1]; }

    // Degree of a clique/null vertex at level i. Empty blocks get the value
    // the formula assigns anyway (the degree such a vertex would have); this
    // keeps the difference relations k_i = D_l(i-1) - D_l(i) and
    // l_i = D_k(i+1) - D_k(i) valid without special cases.
    index_t degree_k(index_t i) const { return deg_k_[check(i) - 1]; }
    index_t degree_l(index_t i) const { return deg_l_[check(i) - 1]; }

    // Number of vertices at levels strictly below / strictly above i.
    // below() accepts i == levels()+1 and returns n.
    index_t below(index_t i) const;
    index_t above(index_t i) const { return n_ - below(i + 1); }

    // Canonical vertex order: levels are laid out from m down to 1, each level
    // as its null part followed by its clique part.
    index_t null_offset(index_t i) const { return above(i); }
    index_t clique_offset(index_t i) const { return above(i) + l(i); }

    index_t clique_total() const { return clique_total_; }

    const std::vector<index_t>& k_runs() const { return k_; }
    const std::vector<index_t>& l_runs() const { return l_; }

    bool operator==(const BlockStructure& o) const {
        return k_ == o.k_ && l_ == o.l_;
    }

private:
    index_t check(index_t i) const;
    void validate() const;

    std::vector<index_t> k_, l_;
    std::vector<index_t> deg_k_, deg_l_;
    std::vector<index_t> below_; // below_[i-1] = vertices at levels < i, i in [1, m+1]
    index_t m_ = 0, n_ = 0, clique_total_ = 0;
};

struct LevelPart {
    index_t level; // 1-based
    int part;      // 1 = clique part, 0 = null part
};

// A threshold graph together with the realization that produced it. Vertices
// are exposed in canonical order (descending level, null part before clique
// part); order() maps original vertex indices to canonical positions.
class ThresholdGraph {
public:
    index_t n() const { return static_cast<index_t>(x_.size()); }
    double theta() const { return theta_; }
    const std::vector<double>& hidden_values() const { return x_; }
    const BlockStructure& blocks() const { return blocks_; }
    const std::vector<index_t>& order() const { return order_; }

    LevelPart level_of(index_t v) const;
    bool adjacent(index_t u, index_t w) const;
    index_t degree(index_t v) const;
    bool connected() const;
    index_t edge_count() const;
    // Canonical endpoints, u < w, lexicographic.
    std::vector<std::pair<index_t, index_t>> edge_list() const;

    // First canonical vertex of the given block; throws precondition_error if
    // the block is empty. level_or_top = 0 means the extreme level for the
    // part: top level for part 1 (the v1 start), level 1 for part 0 (v0).
    index_t first_vertex(index_t level, int part) const;
    index_t start_vertex(int part) const;

    // (clique size, null size) when the graph is a complete split graph:
    // blocks (k=(0,k_G), l=(l_G,0)), or a complete graph (l_G = 0).
    std::optional<std::pair<index_t, index_t>> complete_split() const;

    // Validating constructor used by generate() and the JSON loader.
    static ThresholdGraph from_parts(std::vector<double> x, double theta,
                                     BlockStructure blocks,
                                     std::vector<index_t> order);

private:
    ThresholdGraph(std::vector<double> x, double theta, BlockStructure blocks,
                   std::vector<index_t> order);
    void check_degrees() const;

    std::vector<double> x_;
    double theta_ = 0.0;
    BlockStructure blocks_;
    std::vector<index_t> order_;
    std::vector<LevelPart> level_; // per canonical position
};

// Sample hidden values per config and build the graph.
ThresholdGraph generate(const HiddenVariableConfig& config);

// Creation sequence s_1..s_n of the threshold graph on the given values:
// repeatedly remove the max value if min+max > theta (recording 1) or the min
// otherwise (recording 0); s_1 := s_2.
std::vector<int> creation_sequence(std::vector<double> x, double theta);

// (D_k, D_l) per level, from the run lengths alone.
std::pair<std::vector<index_t>, std::vector<index_t>>
block_degrees(const BlockStructure& blocks);

bool is_connected(const ThresholdGraph& g);

} // namespace ctwalk
