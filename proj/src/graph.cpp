#include "ctwalk/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ctwalk/rng.hpp"

namespace ctwalk {

namespace {

bool finite(double v) { return std::isfinite(v); }

struct SequenceResult {
    std::vector<int> bits;         // s_1..s_n
    std::vector<index_t> seq_pos;  // original vertex -> 1-based sequence position
};

// Removal procedure: while more than one vertex remains, delete the largest
// value if min+max > theta (bit 1) or the smallest otherwise (bit 0). The
// vertex deleted at step j gets sequence position j; the survivor position 1.
// Stable sort keeps tie handling deterministic.
SequenceResult run_creation_sequence(const std::vector<double>& x, double theta) {
    const index_t n = static_cast<index_t>(x.size());
    std::vector<index_t> idx(n);
    std::iota(idx.begin(), idx.end(), index_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](index_t a, index_t b) { return x[a] < x[b]; });

    SequenceResult r;
    r.bits.assign(n, 0);
    r.seq_pos.assign(n, 0);
    index_t lo = 0, hi = n - 1;
    for (index_t j = n; j >= 2; --j) {
        if (x[idx[lo]] + x[idx[hi]] > theta) {
            r.bits[j - 1] = 1;
            r.seq_pos[idx[hi]] = j;
            --hi;
        } else {
            r.bits[j - 1] = 0;
            r.seq_pos[idx[lo]] = j;
            ++lo;
        }
    }
    r.seq_pos[idx[lo]] = 1;
    r.bits[0] = (n >= 2) ? r.bits[1] : 1;
    return r;
}

std::pair<std::vector<index_t>, std::vector<index_t>>
degrees_from_runs(const std::vector<index_t>& k, const std::vector<index_t>& l) {
    const index_t m = static_cast<index_t>(k.size());
    const index_t total_k = std::accumulate(k.begin(), k.end(), index_t{0});
    std::vector<index_t> dk(m), dl(m);
    index_t l_below = 0;
    for (index_t i = 0; i < m; ++i) {
        dk[i] = total_k - 1 + l_below;
        l_below += l[i];
    }
    index_t k_above = 0;
    for (index_t i = m - 1; i >= 0; --i) {
        dl[i] = k_above;
        k_above += k[i];
    }
    return {std::move(dk), std::move(dl)};
}

} // namespace

HiddenVariableConfig HiddenVariableConfig::bernoulli(index_t n, double p,
                                                     double theta,
                                                     std::uint64_t seed) {
    HiddenVariableConfig c;
    c.n = n;
    c.dist = Distribution::bernoulli;
    c.p = p;
    c.theta = theta;
    c.seed = seed;
    return c;
}

HiddenVariableConfig HiddenVariableConfig::uniform(index_t n, double lo,
                                                   double hi, double theta,
                                                   std::uint64_t seed) {
    HiddenVariableConfig c;
    c.n = n;
    c.dist = Distribution::uniform;
    c.lo = lo;
    c.hi = hi;
    c.theta = theta;
    c.seed = seed;
    return c;
}

HiddenVariableConfig
HiddenVariableConfig::explicit_values(std::vector<double> values, double theta) {
    HiddenVariableConfig c;
    c.n = static_cast<index_t>(values.size());
    c.dist = Distribution::explicit_values;
    c.values = std::move(values);
    c.theta = theta;
    return c;
}

void HiddenVariableConfig::validate() const {
    if (n < 1) throw config_error("config: n must be >= 1");
    if (!finite(theta)) throw config_error("config: theta must be finite");
    switch (dist) {
    case Distribution::bernoulli:
        if (!(p >= 0.0 && p <= 1.0))
            throw config_error("config: bernoulli p must be in [0,1]");
        break;
    case Distribution::uniform:
        if (!finite(lo) || !finite(hi) || !(lo < hi))
            throw config_error("config: uniform needs finite lo < hi");
        break;
    case Distribution::explicit_values:
        if (static_cast<index_t>(values.size()) != n)
            throw config_error("config: explicit values length != n");
        for (double v : values)
            if (!finite(v))
                throw config_error("config: explicit values must be finite");
        break;
    }
}

BlockStructure::BlockStructure(std::vector<index_t> k, std::vector<index_t> l)
    : k_(std::move(k)), l_(std::move(l)) {
    m_ = static_cast<index_t>(k_.size());
    if (m_ == 0 || static_cast<index_t>(l_.size()) != m_)
        throw config_error("blocks: k and l must be non-empty and equal length");
    below_.assign(m_ + 1, 0);
    for (index_t i = 0; i < m_; ++i) {
        if (k_[i] < 0 || l_[i] < 0)
            throw config_error("blocks: negative run length");
        below_[i + 1] = below_[i] + k_[i] + l_[i];
    }
    n_ = below_[m_];
    clique_total_ = std::accumulate(k_.begin(), k_.end(), index_t{0});
    validate();
    auto deg = degrees_from_runs(k_, l_);
    deg_k_ = std::move(deg.first);
    deg_l_ = std::move(deg.second);
}

void BlockStructure::validate() const {
    if (n_ < 1) throw config_error("blocks: empty structure");
    if (n_ == 1) {
        if (m_ == 1 && k_[0] == 1) return;
        throw config_error("blocks: a single vertex is the one-element clique "
                           "k = (1), l = (0)");
    }
    for (index_t i = 1; i < m_; ++i)
        if (k_[i] < 1)
            throw config_error("blocks: k_i must be >= 1 for i >= 2");
    for (index_t i = 0; i + 1 < m_; ++i)
        if (l_[i] < 1)
            throw config_error("blocks: l_i must be >= 1 for i <= m-1");
    if (k_[0] == 0) {
        if (l_[0] < 2)
            throw config_error("blocks: k_1 = 0 requires l_1 >= 2");
    } else if (k_[0] < 2) {
        throw config_error("blocks: k_1 must be 0 or >= 2");
    }
}

index_t BlockStructure::check(index_t i) const {
    if (i < 1 || i > m_) throw argument_error("blocks: level out of range");
    return i;
}

index_t BlockStructure::below(index_t i) const {
    if (i < 1 || i > m_ + 1) throw argument_error("blocks: level out of range");
    return below_[i - 1];
}

BlockStructure BlockStructure::from_sequence(const std::vector<int>& bits) {
    const index_t n = static_cast<index_t>(bits.size());
    if (n < 1) throw config_error("sequence: empty");
    for (int b : bits)
        if (b != 0 && b != 1) throw config_error("sequence: bits must be 0/1");
    std::vector<index_t> ks, ls;
    index_t pos = 0;
    while (pos < n) {
        index_t c1 = 0, c0 = 0;
        while (pos < n && bits[pos] == 1) { ++c1; ++pos; }
        while (pos < n && bits[pos] == 0) { ++c0; ++pos; }
        ks.push_back(c1);
        ls.push_back(c0);
    }
    return BlockStructure(std::move(ks), std::move(ls));
}

std::vector<int> BlockStructure::to_sequence() const {
    std::vector<int> bits;
    bits.reserve(n_);
    for (index_t i = 0; i < m_; ++i) {
        bits.insert(bits.end(), k_[i], 1);
        bits.insert(bits.end(), l_[i], 0);
    }
    return bits;
}

ThresholdGraph::ThresholdGraph(std::vector<double> x, double theta,
                               BlockStructure blocks,
                               std::vector<index_t> order)
    : x_(std::move(x)), theta_(theta), blocks_(std::move(blocks)),
      order_(std::move(order)) {
    level_.resize(x_.size());
    for (index_t i = blocks_.levels(); i >= 1; --i) {
        for (index_t p = 0; p < blocks_.l(i); ++p)
            level_[blocks_.null_offset(i) + p] = {i, 0};
        for (index_t p = 0; p < blocks_.k(i); ++p)
            level_[blocks_.clique_offset(i) + p] = {i, 1};
    }
}

ThresholdGraph ThresholdGraph::from_parts(std::vector<double> x, double theta,
                                          BlockStructure blocks,
                                          std::vector<index_t> order) {
    const index_t n = static_cast<index_t>(x.size());
    if (n != blocks.size())
        throw config_error("graph: value count does not match block sizes");
    if (static_cast<index_t>(order.size()) != n)
        throw config_error("graph: order length != n");
    std::vector<char> seen(n, 0);
    for (index_t v : order) {
        if (v < 0 || v >= n || seen[v])
            throw config_error("graph: order is not a permutation");
        seen[v] = 1;
    }
    auto seq = run_creation_sequence(x, theta);
    if (!(BlockStructure::from_sequence(seq.bits) == blocks))
        throw consistency_error("graph: blocks disagree with creation sequence");
    ThresholdGraph g(std::move(x), theta, std::move(blocks), std::move(order));
    g.check_degrees();
    return g;
}

// Every vertex's block degree must equal its raw degree under the threshold
// rule. The comparison predicate is the same x_v + x_w > theta the edge rule
// uses, so floating-point ties behave identically.
void ThresholdGraph::check_degrees() const {
    std::vector<double> xs(x_);
    std::sort(xs.begin(), xs.end());
    const index_t n = this->n();
    for (index_t v = 0; v < n; ++v) {
        const double xv = x_[v];
        auto it = std::partition_point(xs.begin(), xs.end(), [&](double w) {
            return !(xv + w > theta_);
        });
        index_t raw = static_cast<index_t>(xs.end() - it);
        if (xv + xv > theta_) --raw; // drop the self pair
        if (raw != degree(order_[v]))
            throw consistency_error(
                "graph: block degree mismatch at vertex " + std::to_string(v));
    }
}

LevelPart ThresholdGraph::level_of(index_t v) const {
    if (v < 0 || v >= n()) throw argument_error("graph: vertex out of range");
    return level_[v];
}

bool ThresholdGraph::adjacent(index_t u, index_t w) const {
    if (u < 0 || u >= n() || w < 0 || w >= n())
        throw argument_error("graph: vertex out of range");
    if (u == w) return false;
    // Canonical order nests neighborhoods: a clique vertex is adjacent to
    // every later position, a null vertex to none of them.
    return level_[std::min(u, w)].part == 1;
}

index_t ThresholdGraph::degree(index_t v) const {
    const LevelPart lp = level_of(v);
    return lp.part == 1 ? blocks_.degree_k(lp.level) : blocks_.degree_l(lp.level);
}

bool ThresholdGraph::connected() const {
    if (n() == 1) return true;
    return blocks_.l(blocks_.levels()) == 0;
}

index_t ThresholdGraph::edge_count() const {
    const index_t n = this->n();
    index_t total = 0;
    for (index_t i = 1; i <= blocks_.levels(); ++i) {
        const index_t a = blocks_.clique_offset(i);
        const index_t k = blocks_.k(i);
        total += k * (n - 1 - a) - k * (k - 1) / 2;
    }
    return total;
}

std::vector<std::pair<index_t, index_t>> ThresholdGraph::edge_list() const {
    std::vector<std::pair<index_t, index_t>> edges;
    edges.reserve(static_cast<std::size_t>(edge_count()));
    const index_t n = this->n();
    for (index_t i = blocks_.levels(); i >= 1; --i) {
        const index_t a = blocks_.clique_offset(i);
        for (index_t u = a; u < a + blocks_.k(i); ++u)
            for (index_t w = u + 1; w < n; ++w)
                edges.emplace_back(u, w);
    }
    return edges;
}

index_t ThresholdGraph::first_vertex(index_t level, int part) const {
    if (part != 0 && part != 1) throw argument_error("graph: part must be 0 or 1");
    const index_t size = part == 1 ? blocks_.k(level) : blocks_.l(level);
    if (size == 0)
        throw precondition_error("graph: requested block is empty");
    return part == 1 ? blocks_.clique_offset(level) : blocks_.null_offset(level);
}

index_t ThresholdGraph::start_vertex(int part) const {
    if (part == 1) return first_vertex(blocks_.levels(), 1);
    if (part == 0) return first_vertex(1, 0);
    throw argument_error("graph: part must be 0 or 1");
}

std::optional<std::pair<index_t, index_t>> ThresholdGraph::complete_split() const {
    const index_t m = blocks_.levels();
    if (m == 2 && blocks_.k(1) == 0 && blocks_.l(2) == 0)
        return std::make_pair(blocks_.k(2), blocks_.l(1));
    if (m == 1 && blocks_.l(1) == 0)
        return std::make_pair(blocks_.k(1), index_t{0});
    return std::nullopt;
}

ThresholdGraph generate(const HiddenVariableConfig& config) {
    config.validate();
    std::vector<double> x;
    x.reserve(static_cast<std::size_t>(config.n));
    switch (config.dist) {
    case Distribution::bernoulli: {
        Rng rng(config.seed);
        for (index_t i = 0; i < config.n; ++i)
            x.push_back(rng.bernoulli(config.p) ? 1.0 : 0.0);
        break;
    }
    case Distribution::uniform: {
        Rng rng(config.seed);
        for (index_t i = 0; i < config.n; ++i)
            x.push_back(rng.uniform(config.lo, config.hi));
        break;
    }
    case Distribution::explicit_values:
        x = config.values;
        break;
    }

    auto seq = run_creation_sequence(x, config.theta);
    BlockStructure blocks = BlockStructure::from_sequence(seq.bits);

    // Sequence position -> block, in run order.
    const index_t n = config.n;
    std::vector<LevelPart> pos_block(static_cast<std::size_t>(n) + 1);
    {
        index_t pos = 1;
        for (index_t i = 1; i <= blocks.levels(); ++i) {
            for (index_t c = 0; c < blocks.k(i); ++c) pos_block[pos++] = {i, 1};
            for (index_t c = 0; c < blocks.l(i); ++c) pos_block[pos++] = {i, 0};
        }
    }

    // Canonical position per original vertex; vertices in the same block keep
    // ascending original order.
    std::vector<index_t> fill1(blocks.levels() + 1, 0), fill0(blocks.levels() + 1, 0);
    std::vector<index_t> order(n);
    for (index_t v = 0; v < n; ++v) {
        const LevelPart b = pos_block[seq.seq_pos[v]];
        if (b.part == 1)
            order[v] = blocks.clique_offset(b.level) + fill1[b.level]++;
        else
            order[v] = blocks.null_offset(b.level) + fill0[b.level]++;
    }

    return ThresholdGraph::from_parts(std::move(x), config.theta,
                                      std::move(blocks), std::move(order));
}

std::vector<int> creation_sequence(std::vector<double> x, double theta) {
    if (x.empty()) throw config_error("creation sequence: empty value list");
    for (double v : x)
        if (!finite(v)) throw config_error("creation sequence: non-finite value");
    return run_creation_sequence(x, theta).bits;
}

std::pair<std::vector<index_t>, std::vector<index_t>>
block_degrees(const BlockStructure& blocks) {
    return degrees_from_runs(blocks.k_runs(), blocks.l_runs());
}

bool is_connected(const ThresholdGraph& g) { return g.connected(); }

} // namespace ctwalk
