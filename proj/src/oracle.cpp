#include "ctwalk/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace ctwalk {
namespace oracle {

namespace {

void check_oracle_dim(index_t n) {
    if (n < 1) throw argument_error("oracle: empty matrix");
    if (n > max_dim)
        throw argument_error("oracle: dimension above the n <= 512 cap");
}

double inf_norm(const dense::ComplexMatrix& m) {
    double best = 0.0;
    for (index_t i = 0; i < m.n; ++i) {
        double row = 0.0;
        for (index_t j = 0; j < m.n; ++j) row += std::abs(m(i, j));
        best = std::max(best, row);
    }
    return best;
}

dense::ComplexMatrix multiply(const dense::ComplexMatrix& a,
                              const dense::ComplexMatrix& b) {
    const index_t n = a.n;
    dense::ComplexMatrix c(n);
    for (index_t i = 0; i < n; ++i)
        for (index_t k = 0; k < n; ++k) {
            const complex_t aik = a(i, k);
            if (aik == complex_t{}) continue;
            for (index_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

} // namespace

dense::ComplexMatrix expm(const dense::RealMatrix& a, complex_t scale) {
    check_oracle_dim(a.n);
    const index_t n = a.n;
    dense::ComplexMatrix b(n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) b(i, j) = scale * a(i, j);

    int squarings = 0;
    double norm = inf_norm(b);
    while (norm > 0.5 && squarings < 64) {
        norm *= 0.5;
        ++squarings;
    }
    const double down = std::ldexp(1.0, -squarings);
    for (complex_t& v : b.a) v *= down;

    dense::ComplexMatrix result = dense::ComplexMatrix::identity(n);
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) result(i, j) += b(i, j);
    dense::ComplexMatrix term = b;
    for (int k = 2; k <= 40; ++k) {
        term = multiply(term, b);
        const double inv_k = 1.0 / static_cast<double>(k);
        for (complex_t& v : term.a) v *= inv_k;
        for (std::size_t idx = 0; idx < result.a.size(); ++idx)
            result.a[idx] += term.a[idx];
        if (inf_norm(term) < 1e-18) break;
    }
    for (int s = 0; s < squarings; ++s) result = multiply(result, result);
    return result;
}

EigenSystem sym_eigen(const dense::RealMatrix& a0) {
    check_oracle_dim(a0.n);
    const index_t n = a0.n;
    double scale = 0.0;
    for (double v : a0.a) scale = std::max(scale, std::abs(v));
    for (index_t i = 0; i < n; ++i)
        for (index_t j = i + 1; j < n; ++j)
            if (std::abs(a0(i, j) - a0(j, i)) > 1e-12 * (1.0 + scale))
                throw argument_error("oracle: matrix is not symmetric");

    dense::RealMatrix a = a0;
    dense::RealMatrix v(n);
    for (index_t i = 0; i < n; ++i) v(i, i) = 1.0;

    double fro = 0.0;
    for (double x : a.a) fro += x * x;
    fro = std::sqrt(fro);
    // Absolute 1e-13 is unreachable once ||A||_F ~ 1e4 (double resolution), so
    // the stop test is relative.
    const double tol = 1e-13 * std::max(fro, 1e-300);

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (index_t i = 0; i < n; ++i)
            for (index_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
        off = std::sqrt(2.0 * off);
        if (off <= tol) break;

        for (index_t p = 0; p < n - 1; ++p) {
            for (index_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t =
                    (theta >= 0.0 ? 1.0 : -1.0) /
                    (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                a(p, p) -= t * apq;
                a(q, q) += t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (index_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = aip - s * (aiq + tau * aip);
                    a(p, i) = a(i, p);
                    a(i, q) = aiq + s * (aip - tau * aiq);
                    a(q, i) = a(i, q);
                }
                for (index_t i = 0; i < n; ++i) {
                    const double vip = v(i, p), viq = v(i, q);
                    v(i, p) = vip - s * (viq + tau * vip);
                    v(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    std::vector<index_t> perm(n);
    std::iota(perm.begin(), perm.end(), index_t{0});
    std::stable_sort(perm.begin(), perm.end(),
                     [&](index_t x, index_t y) { return a(x, x) < a(y, y); });

    EigenSystem out;
    out.values.resize(n);
    out.vectors = dense::RealMatrix(n);
    for (index_t c = 0; c < n; ++c) {
        out.values[c] = a(perm[c], perm[c]);
        for (index_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, perm[c]);
    }
    return out;
}

dense::ComplexMatrix expm_via_eigen(const dense::RealMatrix& a, complex_t scale) {
    check_oracle_dim(a.n);
    const index_t n = a.n;
    EigenSystem es = sym_eigen(a);
    std::vector<complex_t> factors(n);
    for (index_t k = 0; k < n; ++k)
        factors[k] = std::exp(scale * es.values[k]);
    dense::ComplexMatrix u(n);
    for (index_t i = 0; i < n; ++i)
        for (index_t k = 0; k < n; ++k) {
            const complex_t w = es.vectors(i, k) * factors[k];
            for (index_t j = 0; j < n; ++j) u(i, j) += w * es.vectors(j, k);
        }
    return u;
}

std::vector<double> numeric_time_average(const ThresholdGraph& g, index_t start,
                                         double horizon, index_t steps) {
    const index_t n = g.n();
    check_oracle_dim(n);
    if (start < 0 || start >= n)
        throw argument_error("oracle: vertex out of range");
    if (!(horizon > 0.0) || steps < 1)
        throw argument_error("oracle: horizon and steps must be positive");

    EigenSystem es = sym_eigen(dense::laplacian_dense(g));
    std::vector<double> coeff(n);
    for (index_t k = 0; k < n; ++k) coeff[k] = es.vectors(start, k);

    std::vector<double> pbar(n, 0.0);
    std::vector<complex_t> weighted(n), amp(n);
    for (index_t j = 0; j <= steps; ++j) {
        const double t = horizon * static_cast<double>(j) / steps;
        const double w = (j == 0 || j == steps ? 0.5 : 1.0) / steps;
        for (index_t k = 0; k < n; ++k)
            weighted[k] = coeff[k] * std::polar(1.0, t * es.values[k]);
        for (index_t x = 0; x < n; ++x) {
            complex_t s{};
            for (index_t k = 0; k < n; ++k) s += es.vectors(x, k) * weighted[k];
            amp[x] = s;
        }
        for (index_t x = 0; x < n; ++x) pbar[x] += w * std::norm(amp[x]);
    }
    return pbar;
}

std::vector<std::pair<index_t, index_t>>
threshold_edges(const std::vector<double>& x, double theta) {
    const index_t n = static_cast<index_t>(x.size());
    if (n > dense::max_dense_dim)
        throw argument_error("oracle: brute-force edge scan capped");
    std::vector<std::pair<index_t, index_t>> edges;
    for (index_t u = 0; u < n; ++u)
        for (index_t w = u + 1; w < n; ++w)
            if (x[u] + x[w] > theta) edges.emplace_back(u, w);
    return edges;
}

bool bfs_connected(index_t n,
                   const std::vector<std::pair<index_t, index_t>>& edges) {
    if (n <= 0) return false;
    if (n == 1) return true;
    std::vector<std::vector<index_t>> adj(n);
    for (auto [u, w] : edges) {
        adj[u].push_back(w);
        adj[w].push_back(u);
    }
    std::vector<char> seen(n, 0);
    std::queue<index_t> q;
    q.push(0);
    seen[0] = 1;
    index_t count = 1;
    while (!q.empty()) {
        const index_t u = q.front();
        q.pop();
        for (index_t w : adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++count;
                q.push(w);
            }
    }
    return count == n;
}

} // namespace oracle
} // namespace ctwalk
