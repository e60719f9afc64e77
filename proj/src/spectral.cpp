#include "ctwalk/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctwalk {

namespace {

constexpr index_t max_materialize_dim = 4096;
constexpr double residual_tol = 1e-10;

BalancedVector make_balanced(index_t offset, index_t pos_len, double pos_val,
                             index_t neg_len, double neg_val, double norm_sq) {
    BalancedVector b;
    b.pos_offset = offset;
    b.pos_length = pos_len;
    b.pos_value = pos_val;
    b.neg_length = neg_len;
    b.neg_value = neg_val;
    b.inv_norm = 1.0 / std::sqrt(norm_sq);
    return b;
}

} // namespace

SpectralDecomposition::SpectralDecomposition(const ThresholdGraph& g)
    : n_(g.n()), blocks_(g.blocks()) {
    if (!g.connected())
        throw precondition_error("spectral: graph must be connected");
    build(g);
    verify_residuals();
}

void SpectralDecomposition::build(const ThresholdGraph&) {
    const index_t m = blocks_.levels();
    const index_t n = n_;
    for (index_t i = 1; i <= m; ++i) {
        const index_t ki = blocks_.k(i);
        const index_t li = blocks_.l(i);
        const index_t di = blocks_.below(i);

        if (ki >= 1) {
            EigenComponent c;
            c.eigenvalue = blocks_.degree_k(i) + 1;
            if (ki >= 2) c.diffs.push_back({blocks_.clique_offset(i), ki});
            if (di >= 1)
                c.balanced.push_back(make_balanced(
                    blocks_.clique_offset(i), ki, static_cast<double>(di), di,
                    static_cast<double>(-ki),
                    static_cast<double>((ki + di) * ki * di)));
            c.multiplicity = (ki - 1) + (di >= 1 ? 1 : 0);
            if (c.multiplicity > 0) comps_.push_back(std::move(c));
        }

        if (li >= 1 && i <= m - 1) {
            const index_t kd = ki + di;
            EigenComponent c;
            c.eigenvalue = blocks_.degree_l(i);
            if (li >= 2) c.diffs.push_back({blocks_.null_offset(i), li});
            if (kd >= 1)
                c.balanced.push_back(make_balanced(
                    blocks_.null_offset(i), li, static_cast<double>(kd), kd,
                    static_cast<double>(-li),
                    static_cast<double>(kd * li * blocks_.below(i + 1))));
            c.multiplicity = (li - 1) + (kd >= 1 ? 1 : 0);
            if (c.multiplicity > 0) comps_.push_back(std::move(c));
        }
    }

    {
        EigenComponent c;
        c.eigenvalue = 0;
        c.balanced.push_back(
            make_balanced(0, n, 1.0, 0, 0.0, static_cast<double>(n)));
        c.multiplicity = 1;
        comps_.push_back(std::move(c));
    }

    std::sort(comps_.begin(), comps_.end(),
              [](const EigenComponent& a, const EigenComponent& b) {
                  return a.eigenvalue < b.eigenvalue;
              });
    index_t total = 0;
    for (std::size_t i = 0; i < comps_.size(); ++i) {
        total += comps_[i].multiplicity;
        if (i > 0 && comps_[i].eigenvalue == comps_[i - 1].eigenvalue)
            throw consistency_error("spectral: duplicate eigenvalue");
    }
    if (total != n)
        throw consistency_error("spectral: multiplicities do not sum to n");
}

namespace {

void fill_helmert(std::vector<double>& q, const DiffSpan& d, index_t j) {
    std::fill(q.begin(), q.end(), 0.0);
    const double s = 1.0 / std::sqrt(static_cast<double>(j) * (j + 1));
    for (index_t p = 0; p < j; ++p) q[d.offset + p] = s;
    q[d.offset + j] = -static_cast<double>(j) * s;
}

void fill_balanced(std::vector<double>& q, const BalancedVector& b) {
    std::fill(q.begin(), q.end(), 0.0);
    index_t x = b.pos_offset;
    for (index_t p = 0; p < b.pos_length; ++p, ++x)
        q[x] = b.pos_value * b.inv_norm;
    for (index_t p = 0; p < b.neg_length; ++p, ++x)
        q[x] = b.neg_value * b.inv_norm;
}

} // namespace

void SpectralDecomposition::verify_residuals() const {
    const bool full = n_ <= max_materialize_dim;
    std::vector<double> q(n_);
    auto check = [&](const std::vector<double>& vec, index_t lambda) {
        std::vector<double> y = laplacian_apply(blocks_, vec);
        double resid = 0.0, norm_sq = 0.0;
        for (index_t i = 0; i < n_; ++i) {
            resid = std::max(resid,
                             std::abs(y[i] - static_cast<double>(lambda) * vec[i]));
            norm_sq += vec[i] * vec[i];
        }
        if (resid > residual_tol || std::abs(norm_sq - 1.0) > 1e-12)
            throw consistency_error(
                "spectral: eigenvector residual too large at eigenvalue " +
                std::to_string(lambda));
    };
    for (const EigenComponent& c : comps_) {
        for (const DiffSpan& d : c.diffs) {
            if (full) {
                for (index_t j = 1; j < d.length; ++j) {
                    fill_helmert(q, d, j);
                    check(q, c.eigenvalue);
                }
            } else {
                for (index_t j : {index_t{1}, d.length - 1}) {
                    fill_helmert(q, d, j);
                    check(q, c.eigenvalue);
                }
            }
        }
        for (const BalancedVector& b : c.balanced) {
            fill_balanced(q, b);
            check(q, c.eigenvalue);
        }
    }
}

std::vector<std::pair<index_t, index_t>> SpectralDecomposition::spectrum() const {
    std::vector<std::pair<index_t, index_t>> out;
    out.reserve(comps_.size());
    for (const EigenComponent& c : comps_)
        out.emplace_back(c.eigenvalue, c.multiplicity);
    return out;
}

const EigenComponent& SpectralDecomposition::component(index_t eigenvalue) const {
    auto it = std::lower_bound(comps_.begin(), comps_.end(), eigenvalue,
                               [](const EigenComponent& c, index_t v) {
                                   return c.eigenvalue < v;
                               });
    if (it == comps_.end() || it->eigenvalue != eigenvalue)
        throw argument_error("spectral: eigenvalue not in spectrum");
    return *it;
}

std::vector<double>
SpectralDecomposition::projector_apply(index_t eigenvalue,
                                       const std::vector<double>& v) const {
    if (static_cast<index_t>(v.size()) != n_)
        throw argument_error("spectral: vector length != n");
    const EigenComponent& c = component(eigenvalue);
    std::vector<double> out(n_, 0.0);
    for (const DiffSpan& d : c.diffs) {
        double mean = 0.0;
        for (index_t x = d.offset; x < d.offset + d.length; ++x) mean += v[x];
        mean /= static_cast<double>(d.length);
        for (index_t x = d.offset; x < d.offset + d.length; ++x)
            out[x] += v[x] - mean;
    }
    for (const BalancedVector& b : c.balanced) {
        double dot = 0.0;
        index_t x = b.pos_offset;
        for (index_t p = 0; p < b.pos_length; ++p, ++x)
            dot += v[x] * b.pos_value * b.inv_norm;
        for (index_t p = 0; p < b.neg_length; ++p, ++x)
            dot += v[x] * b.neg_value * b.inv_norm;
        x = b.pos_offset;
        for (index_t p = 0; p < b.pos_length; ++p, ++x)
            out[x] += dot * b.pos_value * b.inv_norm;
        for (index_t p = 0; p < b.neg_length; ++p, ++x)
            out[x] += dot * b.neg_value * b.inv_norm;
    }
    return out;
}

std::vector<std::vector<double>> SpectralDecomposition::dense_vectors() const {
    if (n_ > max_materialize_dim)
        throw argument_error("spectral: graph too large to materialize vectors");
    std::vector<std::vector<double>> rows;
    rows.reserve(static_cast<std::size_t>(n_));
    std::vector<double> q(n_);
    for (const EigenComponent& c : comps_) {
        for (const DiffSpan& d : c.diffs)
            for (index_t j = 1; j < d.length; ++j) {
                fill_helmert(q, d, j);
                rows.push_back(q);
            }
        for (const BalancedVector& b : c.balanced) {
            fill_balanced(q, b);
            rows.push_back(q);
        }
    }
    return rows;
}

SpectralDecomposition decompose(const ThresholdGraph& g) {
    return SpectralDecomposition(g);
}

std::vector<double> laplacian_apply(const BlockStructure& blocks,
                                    const std::vector<double>& v) {
    const index_t n = blocks.size();
    const index_t m = blocks.levels();
    if (static_cast<index_t>(v.size()) != n)
        throw argument_error("laplacian_apply: vector length != n");

    std::vector<double> sum0(m + 1, 0.0), sum1(m + 1, 0.0);
    for (index_t i = 1; i <= m; ++i) {
        for (index_t p = 0; p < blocks.l(i); ++p)
            sum0[i] += v[blocks.null_offset(i) + p];
        for (index_t p = 0; p < blocks.k(i); ++p)
            sum1[i] += v[blocks.clique_offset(i) + p];
    }
    double s1_total = 0.0;
    for (index_t i = 1; i <= m; ++i) s1_total += sum1[i];

    std::vector<double> s0_below(m + 2, 0.0), s1_above(m + 2, 0.0);
    for (index_t i = 1; i <= m; ++i) s0_below[i + 1] = s0_below[i] + sum0[i];
    for (index_t i = m; i >= 1; --i) s1_above[i] = s1_above[i + 1] + sum1[i];

    std::vector<double> out(n, 0.0);
    for (index_t i = 1; i <= m; ++i) {
        const double dl = static_cast<double>(blocks.degree_l(i));
        for (index_t p = 0; p < blocks.l(i); ++p) {
            const index_t x = blocks.null_offset(i) + p;
            out[x] = dl * v[x] - s1_above[i + 1];
        }
        const double dk = static_cast<double>(blocks.degree_k(i));
        for (index_t p = 0; p < blocks.k(i); ++p) {
            const index_t x = blocks.clique_offset(i) + p;
            out[x] = dk * v[x] - (s1_total - v[x] + s0_below[i]);
        }
    }
    return out;
}

} // namespace ctwalk
