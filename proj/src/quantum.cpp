#include "ctwalk/quantum.hpp"

#include <cmath>
#include <complex>

namespace ctwalk {
namespace quantum {

namespace {

complex_t phase(double angle) { return std::polar(1.0, angle); }

void check_vertex(const ThresholdGraph& g, index_t v) {
    if (v < 0 || v >= g.n()) throw argument_error("quantum: vertex out of range");
}

void check_connected(const ThresholdGraph& g) {
    if (!g.connected())
        throw precondition_error("quantum: graph must be connected");
}

// Shared pieces of the closed-form propagator. For a column fixed at one
// endpoint, every entry is one of these level bases, plus the own-eigenvalue
// phase on the diagonal. The suffix sums run over the balanced eigenvectors
// that exist: clique level j contributes when k_j >= 1 and d_j >= 1, null
// level j when l_j >= 1 and k_j + d_j >= 1.
struct ClosedForm {
    const BlockStructure& B;
    double t;
    double inv_n;
    index_t m;
    std::vector<complex_t> sc; // sc[J] = sum_{j>=J} clique balanced terms
    std::vector<complex_t> sn; // sn[J] = sum_{j>=J, j<=m-1} null balanced terms

    ClosedForm(const BlockStructure& blocks, double time)
        : B(blocks), t(time), inv_n(1.0 / static_cast<double>(blocks.size())),
          m(blocks.levels()), sc(m + 2, complex_t{}), sn(m + 2, complex_t{}) {
        for (index_t j = m; j >= 1; --j) {
            sc[j] = sc[j + 1];
            const index_t kj = B.k(j), dj = B.below(j);
            if (kj >= 1 && dj >= 1)
                sc[j] += static_cast<double>(kj) /
                         static_cast<double>(dj * (kj + dj)) *
                         phase(t * static_cast<double>(B.degree_k(j) + 1));
        }
        for (index_t j = m - 1; j >= 1; --j) {
            sn[j] = sn[j + 1];
            const index_t lj = B.l(j), kd = B.k(j) + B.below(j);
            if (lj >= 1 && kd >= 1)
                sn[j] += static_cast<double>(lj) /
                         static_cast<double>(kd * B.below(j + 1)) *
                         phase(t * static_cast<double>(B.degree_l(j)));
        }
    }

    complex_t clique_phase(index_t i) const {
        return phase(t * static_cast<double>(B.degree_k(i) + 1));
    }
    complex_t null_phase(index_t i) const {
        return phase(t * static_cast<double>(B.degree_l(i)));
    }

    // Off-diagonal value for any pair whose higher-level endpoint sits in the
    // clique part of level i (requires k_i >= 1).
    complex_t base_clique(index_t i) const {
        return -clique_phase(i) / static_cast<double>(B.k(i) + B.below(i)) +
               sc[i + 1] + sn[i] + inv_n;
    }

    // Same with the higher-level endpoint in the null part of level i
    // (requires l_i >= 1, i <= m-1), also the value for mixed same-level pairs.
    complex_t base_null(index_t i) const {
        return -null_phase(i) / static_cast<double>(B.below(i + 1)) +
               sc[i + 1] + sn[i + 1] + inv_n;
    }
};

std::vector<complex_t> closed_form_column(const ThresholdGraph& g, index_t start,
                                          double t) {
    const BlockStructure& B = g.blocks();
    const index_t n = g.n();
    const LevelPart s = g.level_of(start);
    const ClosedForm cf(B, t);

    std::vector<complex_t> col(n);
    auto fill = [&](index_t offset, index_t len, complex_t value) {
        for (index_t x = offset; x < offset + len; ++x) col[x] = value;
    };

    // Levels above the start's: the other endpoint decides the base.
    for (index_t i = B.levels(); i > s.level; --i) {
        if (B.l(i) >= 1) fill(B.null_offset(i), B.l(i), cf.base_null(i));
        if (B.k(i) >= 1) fill(B.clique_offset(i), B.k(i), cf.base_clique(i));
    }
    // The start's own level: same part shares the start's base, the opposite
    // part takes the mixed (null) value.
    const complex_t own_base =
        s.part == 1 ? cf.base_clique(s.level) : cf.base_null(s.level);
    fill(B.null_offset(s.level), B.l(s.level),
         s.part == 0 ? own_base : cf.base_null(s.level));
    fill(B.clique_offset(s.level), B.k(s.level),
         s.part == 1 ? own_base : cf.base_null(s.level));
    // Everything below the start's level shares the start's base.
    fill(B.clique_offset(s.level) + B.k(s.level), B.below(s.level), own_base);

    col[start] += s.part == 1 ? cf.clique_phase(s.level) : cf.null_phase(s.level);
    return col;
}

double norm_sq_kahan(const std::vector<complex_t>& v) {
    double sum = 0.0, comp = 0.0;
    for (const complex_t& a : v) {
        const double term = std::norm(a) - comp;
        const double next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    return sum;
}

AmplitudeVector finish_amplitudes(std::vector<complex_t> col, index_t start,
                                  double t) {
    if (std::abs(norm_sq_kahan(col) - 1.0) > 1e-12)
        throw consistency_error("quantum: amplitude norm drifted from 1");
    AmplitudeVector amp;
    amp.amplitudes = std::move(col);
    amp.time = t;
    amp.start = start;
    return amp;
}

} // namespace

complex_t propagator_entry_binary(const ThresholdGraph& g, index_t v, index_t w,
                                  double t) {
    check_vertex(g, v);
    check_vertex(g, w);
    auto split = g.complete_split();
    if (!split)
        throw precondition_error(
            "quantum: graph is not a complete split graph");
    const double n = static_cast<double>(g.n());
    const double kg = static_cast<double>(split->first);
    const double lg = static_cast<double>(split->second);
    const complex_t eint = phase(n * t);
    const bool vc = g.level_of(v).part == 1;
    const bool wc = g.level_of(w).part == 1;
    if (vc && wc)
        return (v == w ? eint : complex_t{}) + (1.0 - eint) / n;
    if (vc != wc) return (1.0 - eint) / n;
    const complex_t eikt = phase(kg * t);
    return (v == w ? eikt : complex_t{}) +
           (1.0 / n + kg * eint / (n * lg) - eikt / lg);
}

complex_t propagator_entry_general(const ThresholdGraph& g, index_t v, index_t w,
                                   double t) {
    check_vertex(g, v);
    check_vertex(g, w);
    check_connected(g);
    const LevelPart a = g.level_of(v), b = g.level_of(w);
    const bool diag = v == w;

    // The index ranges leave exactly one gap: both endpoints (diagonal
    // included) inside the level-1 clique block.
    if (a.level == 1 && a.part == 1 && b.level == 1 && b.part == 1)
        throw coverage_error(
            "quantum: closed form does not cover pairs inside the level-1 "
            "clique block; use evolve() or the spectral method");

    // Anchor at the higher-level endpoint; at equal levels a mixed pair is
    // anchored by its null endpoint, a same-part pair by either one.
    const LevelPart* anchor;
    if (a.level != b.level)
        anchor = a.level > b.level ? &a : &b;
    else if (a.part == b.part)
        anchor = &a;
    else
        anchor = a.part == 0 ? &a : &b;

    const ClosedForm cf(g.blocks(), t);
    if (anchor->part == 1)
        return cf.base_clique(anchor->level) +
               (diag ? cf.clique_phase(anchor->level) : complex_t{});
    return cf.base_null(anchor->level) +
           (diag ? cf.null_phase(anchor->level) : complex_t{});
}

AmplitudeVector evolve(const ThresholdGraph& g, index_t start, double t,
                       Method method) {
    check_vertex(g, start);
    check_connected(g);
    if (method == Method::spectral) {
        SpectralDecomposition dec(g);
        return evolve_spectral(dec, start, t);
    }
    return finish_amplitudes(closed_form_column(g, start, t), start, t);
}

AmplitudeVector evolve_spectral(const SpectralDecomposition& dec, index_t start,
                                double t) {
    if (start < 0 || start >= dec.n())
        throw argument_error("quantum: vertex out of range");
    std::vector<complex_t> col(dec.n(), complex_t{});
    for (const EigenComponent& c : dec.components())
        add_projected_delta(c, start,
                            phase(t * static_cast<double>(c.eigenvalue)),
                            col.data());
    return finish_amplitudes(std::move(col), start, t);
}

ProbabilityDistribution probability(const AmplitudeVector& amp) {
    ProbabilityDistribution dist;
    dist.masses.reserve(amp.amplitudes.size());
    for (const complex_t& a : amp.amplitudes) dist.masses.push_back(std::norm(a));
    dist.time_averaged = false;
    dist.time = amp.time;
    dist.start = amp.start;
    return dist;
}

ProbabilityDistribution probability(const ThresholdGraph& g, index_t start,
                                    double t, Method method) {
    return probability(evolve(g, start, t, method));
}

ProbabilityDistribution time_averaged_spectral(const SpectralDecomposition& dec,
                                               index_t start) {
    if (start < 0 || start >= dec.n())
        throw argument_error("quantum: vertex out of range");
    const index_t n = dec.n();
    std::vector<double> pbar(n, 0.0), proj(n);
    for (const EigenComponent& c : dec.components()) {
        std::fill(proj.begin(), proj.end(), 0.0);
        add_projected_delta(c, start, 1.0, proj.data());
        for (index_t x = 0; x < n; ++x) pbar[x] += proj[x] * proj[x];
    }
    double total = 0.0;
    for (double v : pbar) total += v;
    if (std::abs(total - 1.0) > 1e-12)
        throw consistency_error("quantum: time average mass drifted from 1");
    ProbabilityDistribution dist;
    dist.masses = std::move(pbar);
    dist.time_averaged = true;
    dist.start = start;
    return dist;
}

ProbabilityDistribution time_averaged(const ThresholdGraph& g, index_t start) {
    check_vertex(g, start);
    check_connected(g);
    SpectralDecomposition dec(g);
    return time_averaged_spectral(dec, start);
}

dense::ComplexMatrix propagator(const ThresholdGraph& g, double t,
                                Method method) {
    check_connected(g);
    dense::ComplexMatrix u(g.n());
    if (method == Method::spectral) {
        SpectralDecomposition dec(g);
        for (index_t w = 0; w < g.n(); ++w) {
            AmplitudeVector amp = evolve_spectral(dec, w, t);
            for (index_t v = 0; v < g.n(); ++v) u(v, w) = amp.amplitudes[v];
        }
        return u;
    }
    for (index_t w = 0; w < g.n(); ++w) {
        std::vector<complex_t> col = closed_form_column(g, w, t);
        for (index_t v = 0; v < g.n(); ++v) u(v, w) = col[v];
    }
    return u;
}

} // namespace quantum
} // namespace ctwalk
