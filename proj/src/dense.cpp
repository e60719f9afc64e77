#include "ctwalk/dense.hpp"

#include <algorithm>
#include <cmath>

namespace ctwalk {
namespace dense {

RealMatrix adjacency_dense(const ThresholdGraph& g) {
    RealMatrix a(g.n());
    for (index_t u = 0; u < g.n(); ++u) {
        if (g.level_of(u).part != 1) continue;
        for (index_t w = u + 1; w < g.n(); ++w) {
            a(u, w) = 1.0;
            a(w, u) = 1.0;
        }
    }
    return a;
}

RealMatrix laplacian_dense(const ThresholdGraph& g) {
    RealMatrix l = adjacency_dense(g);
    for (index_t i = 0; i < g.n(); ++i) {
        double deg = 0.0;
        for (index_t j = 0; j < g.n(); ++j) deg += l(i, j);
        for (index_t j = 0; j < g.n(); ++j) l(i, j) = -l(i, j);
        l(i, i) = deg;
    }
    return l;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n != b.n) throw argument_error("dense: dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i)
        best = std::max(best, std::abs(a.a[i] - b.a[i]));
    return best;
}

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) {
    if (a.n != b.n) throw argument_error("dense: dimension mismatch");
    double best = 0.0;
    for (std::size_t i = 0; i < a.a.size(); ++i)
        best = std::max(best, std::abs(a.a[i] - b.a[i]));
    return best;
}

} // namespace dense
} // namespace ctwalk
