#pragma once

#include <utility>
#include <vector>

#include "ctwalk/graph.hpp"

namespace ctwalk {

// Contiguous run of coordinates carrying a Helmert (difference) basis:
// vectors (1,...,1,-j,0,...,0)/sqrt(j(j+1)) for j = 1..length-1, all with the
// same eigenvalue. Spans the complement of the constant vector on the run.
struct DiffSpan {
    index_t offset = 0;
    index_t length = 0;
};

// Unit vector that is zero above pos_offset, constant pos_value on
// [pos_offset, pos_offset+pos_length), and constant neg_value on the
// remaining coordinates through the end of the graph.
struct BalancedVector {
    index_t pos_offset = 0;
    index_t pos_length = 0;
    double pos_value = 0.0;
    index_t neg_length = 0;
    double neg_value = 0.0;
    double inv_norm = 0.0;
};

struct EigenComponent {
    index_t eigenvalue = 0; // Laplacian eigenvalues are integers here
    index_t multiplicity = 0;
    std::vector<DiffSpan> diffs;
    std::vector<BalancedVector> balanced;
};

// Full eigendecomposition of the graph Laplacian in closed form, stored
// implicitly so a projector application costs O(block sizes), not O(n^2).
// Eigenvalues are distinct and ascending; multiplicities sum to n.
class SpectralDecomposition {
public:
    explicit SpectralDecomposition(const ThresholdGraph& g);

    index_t n() const { return n_; }
    const BlockStructure& blocks() const { return blocks_; }
    const std::vector<EigenComponent>& components() const { return comps_; }
    std::vector<std::pair<index_t, index_t>> spectrum() const;

    const EigenComponent& component(index_t eigenvalue) const;

    // out = P_lambda * v for the projector onto the eigenvalue's eigenspace.
    std::vector<double> projector_apply(index_t eigenvalue,
                                        const std::vector<double>& v) const;

    // Materialize all eigenvectors as rows, grouped by ascending eigenvalue
    // (Helmert vectors in j order, then the balanced vector). Guarded by the
    // dense dimension cap.
    std::vector<std::vector<double>> dense_vectors() const;

private:
    void build(const ThresholdGraph& g);
    void verify_residuals() const;

    index_t n_ = 0;
    BlockStructure blocks_;
    std::vector<EigenComponent> comps_;
};

SpectralDecomposition decompose(const ThresholdGraph& g);

// y = L*v using block sums; O(n + levels).
std::vector<double> laplacian_apply(const BlockStructure& blocks,
                                    const std::vector<double>& v);

// psi += scale * (P_lambda delta_start) for one component; works for real and
// complex accumulators. Touches only the component's support.
template <class Scalar>
void add_projected_delta(const EigenComponent& comp, index_t start, Scalar scale,
                         Scalar* psi) {
    for (const DiffSpan& d : comp.diffs) {
        if (start < d.offset || start >= d.offset + d.length) continue;
        const double mean = 1.0 / static_cast<double>(d.length);
        for (index_t x = d.offset; x < d.offset + d.length; ++x)
            psi[x] += scale * (-mean);
        psi[start] += scale;
    }
    for (const BalancedVector& b : comp.balanced) {
        double qs = 0.0;
        if (start >= b.pos_offset && start < b.pos_offset + b.pos_length)
            qs = b.pos_value * b.inv_norm;
        else if (start >= b.pos_offset + b.pos_length &&
                 start < b.pos_offset + b.pos_length + b.neg_length)
            qs = b.neg_value * b.inv_norm;
        if (qs == 0.0) continue;
        const Scalar c = scale * qs;
        index_t x = b.pos_offset;
        for (index_t p = 0; p < b.pos_length; ++p, ++x)
            psi[x] += c * (b.pos_value * b.inv_norm);
        for (index_t p = 0; p < b.neg_length; ++p, ++x)
            psi[x] += c * (b.neg_value * b.inv_norm);
    }
}

} // namespace ctwalk
