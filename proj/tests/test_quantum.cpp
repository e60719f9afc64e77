#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ctwalk/dense.hpp"
#include "ctwalk/graph.hpp"
#include "ctwalk/oracle.hpp"
#include "ctwalk/quantum.hpp"
#include "ctwalk/spectral.hpp"
#include "test_util.hpp"

using namespace ctwalk;
using testutil::ladder_values_connected;

namespace {

dense::ComplexMatrix entry_matrix_binary(const ThresholdGraph& g, double t) {
    dense::ComplexMatrix u(g.n());
    for (index_t v = 0; v < g.n(); ++v)
        for (index_t w = 0; w < g.n(); ++w)
            u(v, w) = quantum::propagator_entry_binary(g, v, w, t);
    return u;
}

} // namespace

TEST_CASE("closed form at t = 0 is the identity") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const ThresholdGraph g = testutil::make_general(
            5 + static_cast<index_t>(seed * 13), seed, 0.8);
        const auto u = quantum::propagator(g, 0.0, Method::closed_form);
        CHECK(dense::max_abs_diff(u, dense::ComplexMatrix::identity(g.n())) <=
              1e-12);
    }
}

TEST_CASE("closed form matches the brute-force matrix exponential") {
    const ThresholdGraph g7 = generate(
        HiddenVariableConfig::explicit_values(ladder_values_connected(), 0.0));
    const ThresholdGraph gb = testutil::make_binary(8, 0.5, 3);
    for (const ThresholdGraph* g : {&g7, &gb}) {
        const auto l = dense::laplacian_dense(*g);
        for (double t : {0.25, 1.0, 3.14159, 10.0}) {
            const auto want = oracle::expm(l, complex_t{0.0, t});
            const auto closed = quantum::propagator(*g, t, Method::closed_form);
            const auto spectral = quantum::propagator(*g, t, Method::spectral);
            CHECK(dense::max_abs_diff(closed, want) <= 1e-12);
            CHECK(dense::max_abs_diff(spectral, want) <= 1e-12);
        }
    }
}

TEST_CASE("propagator is unitary and symmetric") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const ThresholdGraph g = testutil::make_general(
            9 + static_cast<index_t>(seed * 10), seed + 50, 0.75);
        for (double t : {0.1, 1.0, 10.0}) {
            const auto u = quantum::propagator(g, t, Method::closed_form);
            CHECK(testutil::unitarity_defect(u) <= 1e-10);
            for (index_t v = 0; v < g.n(); ++v)
                for (index_t w = v + 1; w < g.n(); ++w)
                    CHECK(std::abs(u(v, w) - u(w, v)) <= 1e-13);
        }
    }
}

TEST_CASE("closed-form and spectral evolutions agree") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const index_t n = 4 + static_cast<index_t>((seed * 37) % 190);
        const ThresholdGraph g =
            seed % 2 == 0 ? testutil::make_binary(n, 0.5, seed)
                          : testutil::make_general(n, seed, 0.55 + 0.05 * (seed % 8));
        const SpectralDecomposition dec(g);
        for (index_t start :
             {g.start_vertex(1), std::max(index_t{0}, g.n() / 2)}) {
            for (double t : {0.37, 2.0}) {
                const auto a = quantum::evolve(g, start, t, Method::closed_form);
                const auto b = quantum::evolve_spectral(dec, start, t);
                REQUIRE(a.amplitudes.size() == b.amplitudes.size());
                for (std::size_t x = 0; x < a.amplitudes.size(); ++x)
                    CHECK(std::abs(a.amplitudes[x] - b.amplitudes[x]) <= 1e-12);
            }
        }
    }
}

TEST_CASE("semigroup property U(s+t) = U(s) U(t)") {
    const ThresholdGraph g = testutil::make_general(16, 8, 0.8);
    const double s = 0.6, t = 1.7;
    const auto us = quantum::propagator(g, s);
    const auto ut = quantum::propagator(g, t);
    const auto ust = quantum::propagator(g, s + t);
    const index_t n = g.n();
    for (index_t i = 0; i < n; ++i)
        for (index_t j = 0; j < n; ++j) {
            complex_t prod{};
            for (index_t k = 0; k < n; ++k) prod += us(i, k) * ut(k, j);
            CHECK(std::abs(prod - ust(i, j)) <= 1e-10);
        }
}

TEST_CASE("two-value model entries match the general closed form") {
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        const index_t n = 4 + static_cast<index_t>((seed * 17) % 60);
        const ThresholdGraph g = testutil::make_binary(n, 0.45, seed + 7);
        for (double t : {0.3, 1.0, 4.2}) {
            const auto via_binary = entry_matrix_binary(g, t);
            const auto via_general = quantum::propagator(g, t, Method::closed_form);
            CHECK(dense::max_abs_diff(via_binary, via_general) <= 1e-12);
        }
    }
}

TEST_CASE("two-value model entries accept complete graphs") {
    const ThresholdGraph kn =
        generate(HiddenVariableConfig::bernoulli(7, 1.0, 0.5, 1));
    const auto l = dense::laplacian_dense(kn);
    const auto want = oracle::expm(l, complex_t{0.0, 0.9});
    const auto got = entry_matrix_binary(kn, 0.9);
    CHECK(dense::max_abs_diff(got, want) <= 1e-12);

    const ThresholdGraph g7 = generate(
        HiddenVariableConfig::explicit_values(ladder_values_connected(), 0.0));
    CHECK_THROWS_AS(
        (void)quantum::propagator_entry_binary(g7, 0, 1, 1.0),
        precondition_error); // not a complete split graph
}

TEST_CASE("frozen values on the 5-vertex split graph at t = pi/5") {
    // k = 3 clique + 2 null vertices, eigenvalues {0, 3, 5}; at t = pi/5 the
    // n-phase is e^{i pi} = -1, so U_11 = -1 + 2/5 and cross entries are 2/5.
    const ThresholdGraph g = generate(HiddenVariableConfig::explicit_values(
        {1.0, 1.0, 1.0, 0.0, 0.0}, 0.5));
    const double t = std::acos(-1.0) / 5.0;
    const index_t v1 = g.start_vertex(1);
    const auto dist = quantum::probability(g, v1, t);
    CHECK(std::abs(dist.masses[v1] - 9.0 / 25.0) <= 1e-12);
    for (index_t x = 0; x < g.n(); ++x) {
        if (x == v1) continue;
        if (g.level_of(x).part == 1)
            CHECK(std::abs(dist.masses[x] - 4.0 / 25.0) <= 1e-12);
    }
    double total = 0.0;
    for (double m : dist.masses) total += m;
    CHECK(std::abs(total - 1.0) <= 1e-12);
}

TEST_CASE("cross-entry modulus law on the two-value model") {
    // |<v1| e^{itL} |v0>|^2 = (2 - 2 cos(nt)) / n^2.
    const ThresholdGraph g = testutil::make_binary(9, 0.5, 11, true);
    const index_t v1 = g.start_vertex(1);
    const index_t v0 = g.start_vertex(0);
    const double n = static_cast<double>(g.n());
    for (double t : {0.3, 0.7, 1.1}) {
        const complex_t e = quantum::propagator_entry_binary(g, v1, v0, t);
        const double want = (2.0 - 2.0 * std::cos(n * t)) / (n * n);
        CHECK(std::abs(std::norm(e) - want) <= 1e-14);
    }
}

TEST_CASE("single-entry coverage: level-1 clique pairs are the only gap") {
    const ThresholdGraph g = generate(
        HiddenVariableConfig::explicit_values(ladder_values_connected(), 0.0));
    REQUIRE(g.blocks().k(1) == 2);
    const double t = 0.83;
    const auto u = quantum::propagator(g, t, Method::closed_form);
    const index_t c1 = g.blocks().clique_offset(1);
    const index_t k1 = g.blocks().k(1);
    index_t uncovered = 0;
    for (index_t v = 0; v < g.n(); ++v)
        for (index_t w = 0; w < g.n(); ++w) {
            const bool gap = v >= c1 && v < c1 + k1 && w >= c1 && w < c1 + k1;
            if (gap) {
                CHECK_THROWS_AS(
                    (void)quantum::propagator_entry_general(g, v, w, t),
                    coverage_error);
                ++uncovered;
            } else {
                const complex_t e = quantum::propagator_entry_general(g, v, w, t);
                CHECK(std::abs(e - u(v, w)) <= 1e-12);
            }
        }
    CHECK(uncovered == k1 * k1);

    // With an empty level-1 clique block every pair is covered.
    const ThresholdGraph h = generate(HiddenVariableConfig::explicit_values(
        {10.0, 4.0, 0.0, 0.0, -3.0}, 2.0));
    REQUIRE(h.connected());
    REQUIRE(h.blocks().k_runs() == std::vector<index_t>{0, 1, 1});
    REQUIRE(h.blocks().l_runs() == std::vector<index_t>{2, 1, 0});
    const auto uh = quantum::propagator(h, t, Method::closed_form);
    for (index_t v = 0; v < h.n(); ++v)
        for (index_t w = 0; w < h.n(); ++w)
            CHECK(std::abs(quantum::propagator_entry_general(h, v, w, t) -
                           uh(v, w)) <= 1e-12);
}

TEST_CASE("time average from a top clique vertex") {
    // pbar(v1) = (1 - 1/n)^2 + 1/n^2, everything else 2/n^2, on any
    // connected graph.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const index_t n = 5 + static_cast<index_t>(seed * 9);
        const ThresholdGraph g = seed % 2 == 0
                                     ? testutil::make_binary(n, 0.5, seed)
                                     : testutil::make_general(n, seed, 0.8);
        const index_t v1 = g.start_vertex(1);
        const auto pbar = quantum::time_averaged(g, v1);
        REQUIRE(pbar.time_averaged);
        const double nn = static_cast<double>(g.n());
        CHECK(std::abs(pbar.masses[v1] -
                       ((1 - 1 / nn) * (1 - 1 / nn) + 1 / (nn * nn))) <= 1e-12);
        for (index_t x = 0; x < g.n(); ++x)
            if (x != v1)
                CHECK(std::abs(pbar.masses[x] - 2 / (nn * nn)) <= 1e-12);
    }
}

TEST_CASE("time average from a null vertex of the two-value model") {
    const ThresholdGraph g = generate(HiddenVariableConfig::explicit_values(
        {1.0, 1.0, 1.0, 0.0, 0.0}, 0.5));
    const index_t v0 = g.start_vertex(0);
    const auto pbar = quantum::time_averaged(g, v0);
    const double n = 5.0, k = 3.0, l = 2.0;
    const double self =
        (1 - 1 / l) * (1 - 1 / l) + (k / (n * l)) * (k / (n * l)) + 1 / (n * n);
    const double other_null =
        1 / (l * l) + (k / (n * l)) * (k / (n * l)) + 1 / (n * n);
    CHECK(std::abs(self - 0.38) <= 1e-15);
    CHECK(std::abs(pbar.masses[v0] - self) <= 1e-12);
    for (index_t x = 0; x < g.n(); ++x) {
        if (x == v0) continue;
        const double want = g.level_of(x).part == 0 ? other_null : 2 / (n * n);
        CHECK(std::abs(pbar.masses[x] - want) <= 1e-12);
    }
}

TEST_CASE("projector time average tracks the numeric long-run average") {
    // Light variant of the brute-force confirmation: moderate horizon.
    const ThresholdGraph g = generate(HiddenVariableConfig::explicit_values(
        {1.0, 1.0, 1.0, 0.0, 0.0}, 0.5));
    const index_t v1 = g.start_vertex(1);
    const auto pbar = quantum::time_averaged(g, v1);
    const auto numeric = oracle::numeric_time_average(g, v1, 200.0, 20000);
    for (index_t x = 0; x < g.n(); ++x)
        CHECK(std::abs(pbar.masses[x] - numeric[x]) <= 5e-2);
}

TEST_CASE("localization rate from the top clique vertex is exact") {
    // n (1 - pbar(v1)) = 2 - 2/n for every connected graph.
    for (index_t n : {index_t{8}, index_t{64}, index_t{512}}) {
        const ThresholdGraph g = testutil::make_binary(n, 0.5, 77 + n);
        const index_t v1 = g.start_vertex(1);
        const auto pbar = quantum::time_averaged(g, v1);
        const double nn = static_cast<double>(n);
        CHECK(std::abs(nn * (1.0 - pbar.masses[v1]) - (2.0 - 2.0 / nn)) <= 1e-9);
    }
}

TEST_CASE("fixed-time localization trend from the top clique vertex") {
    // median over seeds of 1 - P_t(v1) at t = 1 stays below 5/n.
    for (index_t n : {index_t{64}, index_t{256}, index_t{1024}}) {
        std::vector<double> leaked;
        for (std::uint64_t seed = 1; seed <= 11; ++seed) {
            const ThresholdGraph g = testutil::make_binary(n, 0.5, seed * 131);
            const index_t v1 = g.start_vertex(1);
            const auto dist = quantum::probability(g, v1, 1.0);
            leaked.push_back(1.0 - dist.masses[v1]);
        }
        std::sort(leaked.begin(), leaked.end());
        const double median = leaked[leaked.size() / 2];
        CHECK(median <= 5.0 / static_cast<double>(n));
    }
}

TEST_CASE("quantum argument and precondition errors") {
    const ThresholdGraph g = testutil::make_binary(6, 0.5, 5);
    CHECK_THROWS_AS((void)quantum::evolve(g, -1, 1.0), argument_error);
    CHECK_THROWS_AS((void)quantum::evolve(g, 6, 1.0), argument_error);
    CHECK_THROWS_AS((void)quantum::time_averaged(g, 99), argument_error);

    const ThresholdGraph bad = generate(
        HiddenVariableConfig::explicit_values(testutil::ladder_values(), 0.0));
    CHECK_THROWS_AS((void)quantum::evolve(bad, 0, 1.0), precondition_error);
    CHECK_THROWS_AS((void)quantum::propagator(bad, 1.0), precondition_error);
    CHECK_THROWS_AS((void)quantum::propagator_entry_general(bad, 0, 1, 1.0),
                    precondition_error);
}

TEST_CASE("single vertex walk is trivial") {
    const ThresholdGraph g =
        generate(HiddenVariableConfig::explicit_values({2.0}, 0.0));
    const auto amp = quantum::evolve(g, 0, 3.7);
    REQUIRE(amp.amplitudes.size() == 1);
    CHECK(std::abs(amp.amplitudes[0] - complex_t{1.0, 0.0}) <= 1e-12);
    const auto pbar = quantum::time_averaged(g, 0);
    CHECK(std::abs(pbar.masses[0] - 1.0) <= 1e-15);
}
