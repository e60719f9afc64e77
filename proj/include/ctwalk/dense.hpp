#pragma once

#include <complex>
#include <vector>

#include "ctwalk/errors.hpp"
#include "ctwalk/graph.hpp"

namespace ctwalk {

using complex_t = std::complex<double>;

namespace dense {

// Cap on explicit matrix allocation; everything above must go through the
// implicit block representations.
inline constexpr index_t max_dense_dim = 4096;

inline void check_dim(index_t n) {
    if (n < 1 || n > max_dense_dim)
        throw argument_error("dense: dimension out of range");
}

struct RealMatrix {
    index_t n = 0;
    std::vector<double> a;

    RealMatrix() = default;
    explicit RealMatrix(index_t dim) : n(dim) {
        check_dim(dim);
        a.assign(static_cast<std::size_t>(n) * n, 0.0);
    }
    double& operator()(index_t i, index_t j) { return a[i * n + j]; }
    double operator()(index_t i, index_t j) const { return a[i * n + j]; }
};

struct ComplexMatrix {
    index_t n = 0;
    std::vector<complex_t> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(index_t dim) : n(dim) {
        check_dim(dim);
        a.assign(static_cast<std::size_t>(n) * n, complex_t{0.0, 0.0});
    }
    static ComplexMatrix identity(index_t dim) {
        ComplexMatrix m(dim);
        for (index_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    complex_t& operator()(index_t i, index_t j) { return a[i * n + j]; }
    complex_t operator()(index_t i, index_t j) const { return a[i * n + j]; }
};

RealMatrix adjacency_dense(const ThresholdGraph& g);
RealMatrix laplacian_dense(const ThresholdGraph& g);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(const RealMatrix& a, const RealMatrix& b);

} // namespace dense
} // namespace ctwalk
