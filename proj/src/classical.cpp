#include "ctwalk/classical.hpp"

#include <cmath>

namespace ctwalk {
namespace classical {

namespace {

void check_start(index_t start, index_t n) {
    if (start < 0 || start >= n)
        throw argument_error("classical: vertex out of range");
}

ClassicalDistribution finish(std::vector<double> masses, index_t start,
                             double t) {
    double total = 0.0;
    for (double v : masses) total += v;
    if (std::abs(total - 1.0) > 1e-12)
        throw consistency_error("classical: total mass drifted from 1");
    for (double& v : masses) {
        if (v < 0.0) {
            if (v < -1e-14)
                throw consistency_error("classical: negative mass beyond tolerance");
            v = 0.0;
        }
    }
    ClassicalDistribution dist;
    dist.masses = std::move(masses);
    dist.time = t;
    dist.start = start;
    return dist;
}

} // namespace

ClassicalDistribution evolve_spectral(const SpectralDecomposition& dec,
                                      index_t start, double t) {
    check_start(start, dec.n());
    if (!(t >= 0.0))
        throw argument_error("classical: time must be >= 0");
    std::vector<double> masses(dec.n(), 0.0);
    for (const EigenComponent& c : dec.components())
        add_projected_delta(c, start,
                            std::exp(-t * static_cast<double>(c.eigenvalue)),
                            masses.data());
    return finish(std::move(masses), start, t);
}

ClassicalDistribution evolve(const ThresholdGraph& g, index_t start, double t) {
    if (!g.connected())
        throw precondition_error("classical: graph must be connected");
    SpectralDecomposition dec(g);
    return evolve_spectral(dec, start, t);
}

ClassicalDistribution time_average_spectral(const SpectralDecomposition& dec,
                                            index_t start) {
    check_start(start, dec.n());
    std::vector<double> masses(dec.n(), 0.0);
    add_projected_delta(dec.component(0), start, 1.0, masses.data());
    return finish(std::move(masses), start, 0.0);
}

ClassicalDistribution time_average(const ThresholdGraph& g, index_t start) {
    if (!g.connected())
        throw precondition_error("classical: graph must be connected");
    SpectralDecomposition dec(g);
    return time_average_spectral(dec, start);
}

double spread_deviation(const ClassicalDistribution& dist) {
    const double n = static_cast<double>(dist.masses.size());
    double dev = 0.0;
    for (double v : dist.masses)
        dev = std::max(dev, std::abs(n * v - 1.0));
    return dev;
}

} // namespace classical
} // namespace ctwalk
