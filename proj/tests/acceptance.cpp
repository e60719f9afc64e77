// End-to-end acceptance suite. Each criterion prints exactly one PASS/FAIL
// line; the process exit code is non-zero iff any criterion failed.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ctwalk/classical.hpp"
#include "ctwalk/dense.hpp"
#include "ctwalk/graph.hpp"
#include "ctwalk/oracle.hpp"
#include "ctwalk/quantum.hpp"
#include "ctwalk/spectral.hpp"
#include "test_util.hpp"

using namespace ctwalk;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool pass,
            const std::string& detail) {
    std::printf("CRITERION %d %-34s %s (%s)\n", index, name.c_str(),
                pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

const double kPi = std::acos(-1.0);

// Mixed corpus of connected graphs: two-value (Bernoulli) models and
// general uniform-value models across both level-1 shapes.
std::vector<ThresholdGraph> corpus(int binary_count, int general_count,
                                   index_t n_lo, index_t n_hi) {
    std::vector<ThresholdGraph> out;
    std::uint64_t seed = 1;
    for (int i = 0; i < binary_count; ++i, ++seed) {
        const index_t n =
            n_lo + static_cast<index_t>((seed * 37) % (n_hi - n_lo + 1));
        out.push_back(testutil::make_binary(n, 0.3 + 0.05 * (seed % 9), seed));
    }
    for (int i = 0; i < general_count; ++i, ++seed) {
        const index_t n =
            n_lo + static_cast<index_t>((seed * 53) % (n_hi - n_lo + 1));
        out.push_back(
            testutil::make_general(n, seed, 0.45 + 0.05 * (seed % 10)));
    }
    return out;
}

// 1. Closed-form propagator vs the series matrix exponential on 100 graphs.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto graphs = corpus(50, 50, 4, 64);
    const std::vector<double> times = {0.0, 0.37, 1.0, kPi, 10.0};
    double worst = 0.0;
    for (const ThresholdGraph& g : graphs) {
        const dense::RealMatrix lap = dense::laplacian_dense(g);
        for (double t : times) {
            const auto closed = quantum::propagator(g, t, Method::closed_form);
            const auto series = oracle::expm(lap, complex_t{0.0, t});
            worst = std::max(worst, dense::max_abs_diff(closed, series));
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    report(1, "closed form vs series expm", worst <= 1e-9 && secs < 180.0,
           "max dev " + fmt(worst) + ", " + fmt(secs) + " s, 100 graphs x 5 t");
}

// 2. General closed form restricted to two-value models reproduces the
//    dedicated two-value entry formula.
void criterion_2() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const index_t n = 4 + static_cast<index_t>((seed * 31) % 61);
        const ThresholdGraph g =
            testutil::make_binary(n, 0.25 + 0.05 * (seed % 10), seed + 500);
        for (double t : {0.37, 1.0, kPi}) {
            const auto general = quantum::propagator(g, t, Method::closed_form);
            for (index_t v = 0; v < n; ++v)
                for (index_t w = 0; w < n; ++w)
                    worst = std::max(
                        worst,
                        std::abs(general(v, w) -
                                 quantum::propagator_entry_binary(g, v, w, t)));
        }
    }
    report(2, "general form vs two-value form", worst <= 1e-12,
           "max dev " + fmt(worst) + ", 20 graphs x 3 t");
}

// 3. Spectral table: residuals and pairwise orthonormality on 100 graphs
//    covering both level-1 branches (k_1 >= 2 and k_1 == 0).
void criterion_3() {
    int with_clique_start = 0, with_null_start = 0;
    double worst_resid = 0.0, worst_gram = 0.0;
    std::vector<ThresholdGraph> graphs;
    for (std::uint64_t seed = 1; seed <= 98; ++seed) {
        const index_t n = 4 + static_cast<index_t>((seed * 41) % 197);
        graphs.push_back(seed % 2 == 0
                             ? testutil::make_binary(n, 0.5, seed + 900)
                             : testutil::make_general(
                                   n, seed, 0.4 + 0.05 * (seed % 10)));
    }
    // Deterministic covers for both level-1 shapes.
    graphs.push_back(generate(HiddenVariableConfig::explicit_values(
        testutil::ladder_values_connected(), 0.0))); // k_1 = 2
    graphs.push_back(generate(HiddenVariableConfig::explicit_values(
        {1.0, 0.0, 0.0, 0.0, 0.0}, 0.5))); // k_1 = 0 (star)
    for (const ThresholdGraph& g : graphs) {
        (g.blocks().k(1) >= 2 ? with_clique_start : with_null_start) += 1;

        const SpectralDecomposition dec(g);
        const auto vecs = dec.dense_vectors();
        std::vector<index_t> lambda_of;
        for (const auto& [lam, mult] : dec.spectrum())
            for (index_t c = 0; c < mult; ++c) lambda_of.push_back(lam);

        for (std::size_t r = 0; r < vecs.size(); ++r) {
            const auto lv = laplacian_apply(g.blocks(), vecs[r]);
            for (index_t x = 0; x < g.n(); ++x)
                worst_resid = std::max(
                    worst_resid,
                    std::abs(lv[x] - static_cast<double>(lambda_of[r]) *
                                         vecs[r][x]));
            for (std::size_t s = r; s < vecs.size(); ++s) {
                double dot = 0.0;
                for (index_t x = 0; x < g.n(); ++x)
                    dot += vecs[r][x] * vecs[s][x];
                worst_gram = std::max(
                    worst_gram, std::abs(dot - (r == s ? 1.0 : 0.0)));
            }
        }
    }
    const bool both = with_clique_start > 0 && with_null_start > 0;
    report(3, "spectral residuals + Gram",
           worst_resid <= 1e-10 && worst_gram <= 1e-10 && both,
           "resid " + fmt(worst_resid) + ", gram " + fmt(worst_gram) +
               ", k1>=2 on " + std::to_string(with_clique_start) +
               ", k1=0 on " + std::to_string(with_null_start) + " of 100");
}

// 4. Projector-based time averages: closed-form laws exactly, numeric
//    long-horizon averages approximately.
void criterion_4() {
    double worst_law = 0.0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const index_t n = 4 + static_cast<index_t>((seed * 17) % 61);
        const ThresholdGraph g =
            seed % 2 == 0 ? testutil::make_binary(n, 0.5, seed + 40, true)
                          : testutil::make_general(n, seed + 40, 0.8);
        const double nn = static_cast<double>(g.n());

        const index_t v1 = g.start_vertex(1);
        const auto from_v1 = quantum::time_averaged(g, v1);
        worst_law = std::max(
            worst_law, std::abs(from_v1.masses[v1] - ((1 - 1 / nn) * (1 - 1 / nn) +
                                                      1 / (nn * nn))));
        for (index_t x = 0; x < g.n(); ++x)
            if (x != v1)
                worst_law = std::max(
                    worst_law, std::abs(from_v1.masses[x] - 2 / (nn * nn)));

        if (const auto split = g.complete_split();
            split && split->second >= 1) {
            const double k = static_cast<double>(split->first);
            const double l = static_cast<double>(split->second);
            const index_t v0 = g.start_vertex(0);
            const auto from_v0 = quantum::time_averaged(g, v0);
            const double c = (k / (nn * l)) * (k / (nn * l)) + 1 / (nn * nn);
            for (index_t x = 0; x < g.n(); ++x) {
                double want = 2 / (nn * nn);
                if (x == v0) want = (1 - 1 / l) * (1 - 1 / l) + c;
                else if (g.level_of(x).part == 0) want = 1 / (l * l) + c;
                worst_law =
                    std::max(worst_law, std::abs(from_v0.masses[x] - want));
            }
        }
    }

    double worst_numeric = 0.0;
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        const index_t n = 5 + static_cast<index_t>(seed);
        const ThresholdGraph g = seed == 2 ? testutil::make_general(n, 7, 0.8)
                                           : testutil::make_binary(n, 0.5, seed);
        for (int part : {1, 0}) {
            if (part == 0 && g.blocks().l(1) == 0) continue;
            const index_t start = g.start_vertex(part);
            const auto pbar = quantum::time_averaged(g, start);
            const auto numeric =
                oracle::numeric_time_average(g, start, 2000.0, 200000);
            for (index_t x = 0; x < g.n(); ++x)
                worst_numeric = std::max(
                    worst_numeric, std::abs(pbar.masses[x] - numeric[x]));
        }
    }
    report(4, "time averages (laws + numeric)",
           worst_law <= 1e-12 && worst_numeric <= 5e-3,
           "law dev " + fmt(worst_law) + ", numeric dev " + fmt(worst_numeric));
}

// 5. Localization rates: exact 2 - 2/n from the top clique vertex; null-start
//    rate approaches 2/(1-p) = 4 at p = 1/2.
void criterion_5() {
    // Escape rate n(1 - pbar(start)): computed as n * sum of the other
    // masses, which the mass constraint makes identical but keeps the
    // subtraction from cancelling at large n.
    auto escape_rate = [](const ThresholdGraph& g, index_t start) {
        const auto pbar = quantum::time_averaged(g, start);
        double off = 0.0, comp = 0.0;
        for (index_t x = 0; x < g.n(); ++x) {
            if (x == start) continue;
            const double term = pbar.masses[x] - comp;
            const double next = off + term;
            comp = (next - off) - term;
            off = next;
        }
        return static_cast<double>(g.n()) * off;
    };

    double worst_v1 = 0.0;
    for (index_t n : {index_t{8}, index_t{64}, index_t{512}, index_t{4096}}) {
        const ThresholdGraph g = testutil::make_binary(n, 0.5, 31 + n);
        const double nn = static_cast<double>(n);
        const double rate = escape_rate(g, g.start_vertex(1));
        worst_v1 = std::max(worst_v1, std::abs(rate - (2.0 - 2.0 / nn)));
    }

    std::vector<double> v0_rates;
    const index_t n = 4096;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const ThresholdGraph g = testutil::make_binary(n, 0.5, seed * 7919, true);
        v0_rates.push_back(escape_rate(g, g.start_vertex(0)));
    }
    std::sort(v0_rates.begin(), v0_rates.end());
    const double median =
        0.5 * (v0_rates[9] + v0_rates[10]); // 20 samples -> mean of middles
    const bool v0_ok = std::abs(median - 4.0) <= 0.2; // within 5% of 2/(1-p)
    report(5, "localization rates", worst_v1 <= 1e-12 && v0_ok,
           "v1 dev " + fmt(worst_v1) + ", v0 median " + fmt(median) +
               " vs 4 at n=4096");
}

// 6. Desk-scale contrast at n = 1024: the quantum walk stays home, the
//    classical walk spreads uniformly.
void criterion_6() {
    const index_t n = 1024;
    const ThresholdGraph g = testutil::make_binary(n, 0.5, 2024);
    const SpectralDecomposition dec(g);
    const index_t v1 = g.start_vertex(1);
    const double t = 1.0;

    const double quantum_return = quantum::probability(g, v1, t).masses[v1];
    const auto classical_dist = classical::evolve_spectral(dec, v1, t);
    const double classical_return = classical_dist.masses[v1];
    const double spread = classical::spread_deviation(classical_dist);
    const double avg_dev = classical::spread_deviation(
        classical::time_average_spectral(dec, v1));

    const bool pass = quantum_return >= 0.99 && classical_return <= 0.01 &&
                      spread <= 0.1 && avg_dev <= 1e-12;
    report(6, "quantum/classical contrast", pass,
           "qw return " + fmt(quantum_return) + ", cw return " +
               fmt(classical_return) + ", cw spread " + fmt(spread) +
               ", cw avg dev " + fmt(avg_dev));
}

// 7. Cross-entry modulus law |U_{v1 v0}|^2 = (2 - 2 cos nt)/n^2, confirmed by
//    the series exponential and distinguished from the (2 - cos nt)/n^2
//    variant.
void criterion_7() {
    const ThresholdGraph g = testutil::make_binary(9, 0.5, 12, true);
    const double n = static_cast<double>(g.n());
    const index_t v1 = g.start_vertex(1);
    const index_t v0 = g.start_vertex(0);
    const auto lap = dense::laplacian_dense(g);

    double worst = 0.0, closest_variant = 1e9;
    for (double t : {0.3, 0.7, 1.1}) {
        const auto series = oracle::expm(lap, complex_t{0.0, t});
        const double observed = std::norm(series(v1, v0));
        const double law = (2.0 - 2.0 * std::cos(n * t)) / (n * n);
        const double variant = (2.0 - std::cos(n * t)) / (n * n);
        worst = std::max(worst, std::abs(observed - law));
        closest_variant = std::min(closest_variant, std::abs(observed - variant));

        const complex_t entry = quantum::propagator_entry_binary(g, v1, v0, t);
        worst = std::max(worst, std::abs(std::norm(entry) - law));
    }
    report(7, "cross-entry modulus law", worst <= 1e-10 && closest_variant > 1e-3,
           "dev from 2-2cos law " + fmt(worst) + "; 2-cos variant off by >= " +
               fmt(closest_variant));
}

// 8. Scale: a closed-form distribution at n = 100000 in under a second, while
//    the brute-force path is capped at n <= 512.
void criterion_8() {
    const ThresholdGraph g = testutil::make_binary(100000, 0.5, 99);
    const index_t v1 = g.start_vertex(1);
    const auto t0 = std::chrono::steady_clock::now();
    const auto dist = quantum::probability(g, v1, 1.0, Method::closed_form);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    double total = 0.0;
    for (double m : dist.masses) total += m;

    bool oracle_capped = false;
    try {
        dense::RealMatrix big(513);
        (void)oracle::expm(big, complex_t{0.0, 1.0});
    } catch (const argument_error&) {
        oracle_capped = true;
    }
    const bool pass =
        secs < 1.0 && std::abs(total - 1.0) <= 1e-9 && oracle_capped;
    report(8, "scale: n=100000 closed form", pass,
           fmt(secs) + " s, mass dev " + fmt(std::abs(total - 1.0)) +
               ", oracle capped at 512: " + (oracle_capped ? "yes" : "no"));
}

// 9. CLI determinism: identical invocations produce byte-identical output.
void criterion_9() {
    bool pass = true;
    std::string detail;
    try {
        const std::string evolve_args =
            "evolve --n 128 --dist bernoulli:0.5 --seed 17 --walk quantum "
            "--t0 0 --t1 2 --steps 8 --amplitudes";
        const auto a = testutil::run_cli(evolve_args);
        const auto b = testutil::run_cli(evolve_args);
        const std::string sweep_args =
            "sweep --kind contrast --sizes 64,128 --seeds 1..5 --t 1";
        const auto c = testutil::run_cli(sweep_args);
        const auto d = testutil::run_cli(sweep_args);
        const std::string gen_args =
            "generate --n 64 --dist uniform:0,1 --theta 0.8 --seed 3";
        const auto e = testutil::run_cli(gen_args);
        const auto f = testutil::run_cli(gen_args);
        pass = a.code == 0 && c.code == 0 && e.code == 0 && a.out == b.out &&
               c.out == d.out && e.out == f.out && !a.out.empty() &&
               !c.out.empty() && !e.out.empty();
        detail = "evolve/sweep/generate reruns byte-identical: " +
                 std::string(pass ? "yes" : "no");
    } catch (const std::exception& ex) {
        pass = false;
        detail = ex.what();
    }
    report(9, "CLI determinism", pass, detail);
}

} // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    if (failures == 0)
        std::printf("ALL 9 CRITERIA PASSED\n");
    else
        std::printf("%d CRITERIA FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
