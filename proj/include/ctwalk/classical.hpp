#pragma once

#include <vector>

#include "ctwalk/graph.hpp"
#include "ctwalk/spectral.hpp"

namespace ctwalk {

struct ClassicalDistribution {
    std::vector<double> masses; // canonical vertex order
    double time = 0.0;
    index_t start = 0;
};

namespace classical {

// Heat-kernel walk e^{-tL} applied to delta_start, synthesized from the
// closed-form spectrum. t must be >= 0.
ClassicalDistribution evolve(const ThresholdGraph& g, index_t start, double t);
ClassicalDistribution evolve_spectral(const SpectralDecomposition& dec,
                                      index_t start, double t);

// Long-run time average; equals the projection onto the zero eigenspace,
// i.e. the uniform distribution, for any connected graph.
ClassicalDistribution time_average(const ThresholdGraph& g, index_t start);
ClassicalDistribution time_average_spectral(const SpectralDecomposition& dec,
                                            index_t start);

// max_y |n * mass(y) - 1|, the distance from uniform in scaled sup norm.
double spread_deviation(const ClassicalDistribution& dist);

} // namespace classical
} // namespace ctwalk
