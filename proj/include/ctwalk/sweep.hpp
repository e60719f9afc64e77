#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctwalk/graph.hpp"

namespace ctwalk {
namespace sweep {

enum class Kind { rates, classical_spread, contrast };

struct Request {
    Kind kind = Kind::rates;
    std::vector<index_t> sizes;
    std::vector<std::uint64_t> seeds;
    double p = 0.5;      // Bernoulli value probability
    double theta = 0.5;  // any theta in [0,1) gives the two-value split
    double t = 1.0;      // evolution time (classical_spread, contrast)
    int start_part = 1;  // 1 = first clique vertex, 0 = first null vertex
};

struct Row {
    index_t n = 0;
    std::uint64_t seed = 0;
    bool median = false;
    std::string quantity;
    double value = 0.0;
};

// Quantities emitted per (n, seed):
//   rates:            qw_rate_v1 = n(1 - pbar(v1)), qw_rate_v0 likewise
//   classical_spread: classical_uniform_dev = max_y |n P_t(y) - 1|
//   contrast:         quantum_return_prob, classical_return_prob at time t
// Rows are ordered (size order given, seed order given, fixed quantity
// order); per-(n, quantity) median rows are appended after them. Work is
// distributed across threads but results are position-stable, so output is
// deterministic.
std::vector<Row> run(const Request& req);

void append_medians(std::vector<Row>& rows);

std::string to_csv(const std::vector<Row>& rows);
std::string to_json(const std::vector<Row>& rows);

// CTWALK_THREADS overrides hardware concurrency.
int thread_count();

} // namespace sweep
} // namespace ctwalk
