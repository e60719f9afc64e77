#pragma once

#include <complex>
#include <vector>

#include "ctwalk/dense.hpp"
#include "ctwalk/graph.hpp"
#include "ctwalk/spectral.hpp"

namespace ctwalk {

enum class Method { closed_form, spectral };

struct AmplitudeVector {
    std::vector<complex_t> amplitudes; // canonical vertex order
    double time = 0.0;
    index_t start = 0;
};

struct ProbabilityDistribution {
    std::vector<double> masses;
    bool time_averaged = false;
    double time = 0.0; // meaningful when !time_averaged
    index_t start = 0;
};

namespace quantum {

// Propagator entry <v| e^{itL} |w> for a complete split graph (clique block
// followed by null block). Throws precondition_error on any other shape.
complex_t propagator_entry_binary(const ThresholdGraph& g, index_t v, index_t w,
                                  double t);

// Propagator entry from the general closed form, strict index ranges only:
// the anchor endpoint is the one at the higher level (tried both ways via
// symmetry). Pairs with both endpoints in a level-1 clique block are outside
// the covered ranges and raise coverage_error; full columns extend across the
// gap consistently (see evolve).
complex_t propagator_entry_general(const ThresholdGraph& g, index_t v, index_t w,
                                   double t);

AmplitudeVector evolve(const ThresholdGraph& g, index_t start, double t,
                       Method method = Method::closed_form);
AmplitudeVector evolve_spectral(const SpectralDecomposition& dec, index_t start,
                                double t);

ProbabilityDistribution probability(const AmplitudeVector& amp);
ProbabilityDistribution probability(const ThresholdGraph& g, index_t start,
                                    double t,
                                    Method method = Method::closed_form);

// Infinite-time average via eigenprojectors: pbar(x) = sum_l ((P_l d_s)(x))^2.
ProbabilityDistribution time_averaged(const ThresholdGraph& g, index_t start);
ProbabilityDistribution time_averaged_spectral(const SpectralDecomposition& dec,
                                               index_t start);

// Full propagator matrix (column per start vertex); dense-capped.
dense::ComplexMatrix propagator(const ThresholdGraph& g, double t,
                                Method method = Method::closed_form);

} // namespace quantum
} // namespace ctwalk
