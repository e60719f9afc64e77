#pragma once

#include <utility>
#include <vector>

#include "ctwalk/dense.hpp"
#include "ctwalk/graph.hpp"

namespace ctwalk {
namespace oracle {

// The brute-force reference path is deliberately capped; closed forms carry
// everything larger.
inline constexpr index_t max_dim = 512;

// e^{scale * A} by scaling-and-squaring on a truncated Taylor series.
dense::ComplexMatrix expm(const dense::RealMatrix& a, complex_t scale);

struct EigenSystem {
    std::vector<double> values;  // ascending
    dense::RealMatrix vectors;   // eigenvector per column, matching values
};

// Cyclic Jacobi rotations for a symmetric matrix.
EigenSystem sym_eigen(const dense::RealMatrix& a);

// e^{scale * A} synthesized from sym_eigen; an independent second path.
dense::ComplexMatrix expm_via_eigen(const dense::RealMatrix& a, complex_t scale);

// Trapezoid average of |amplitude|^2 over [0, horizon], eigensynthesis per
// step; the brute-force check for the projector-based time average.
std::vector<double> numeric_time_average(const ThresholdGraph& g, index_t start,
                                         double horizon = 2000.0,
                                         index_t steps = 200000);

// Edges straight from the threshold rule x_u + x_w > theta, original vertex
// indices, u < w lexicographic.
std::vector<std::pair<index_t, index_t>>
threshold_edges(const std::vector<double>& x, double theta);

bool bfs_connected(index_t n,
                   const std::vector<std::pair<index_t, index_t>>& edges);

} // namespace oracle
} // namespace ctwalk
