#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ctwalk/classical.hpp"
#include "ctwalk/dense.hpp"
#include "ctwalk/errors.hpp"
#include "ctwalk/format.hpp"
#include "ctwalk/graph.hpp"
#include "ctwalk/graph_json.hpp"
#include "ctwalk/oracle.hpp"
#include "ctwalk/quantum.hpp"
#include "ctwalk/spectral.hpp"
#include "ctwalk/sweep.hpp"

namespace {

using namespace ctwalk;
using ordered_json = nlohmann::ordered_json;

constexpr int exit_ok = 0;
constexpr int exit_internal = 1;
constexpr int exit_usage = 2;
constexpr int exit_precondition = 3;
constexpr int exit_verify_failed = 4;

struct GenOpts {
    std::string graph_path;
    index_t n = 0;
    std::string dist = "bernoulli:0.5";
    double theta = 0.5;
    std::uint64_t seed = 0;
};

void add_gen_opts(CLI::App* cmd, GenOpts& o, bool allow_graph) {
    if (allow_graph)
        cmd->add_option("--graph", o.graph_path,
                        "Load the graph from a JSON file instead of sampling");
    cmd->add_option("--n", o.n, "Number of vertices");
    cmd->add_option(
        "--dist", o.dist,
        "Value distribution: bernoulli:P, uniform:LO,HI or explicit:V1,V2,...");
    cmd->add_option("--theta", o.theta, "Adjacency threshold (default 0.5)");
    cmd->add_option("--seed", o.seed, "RNG seed (default 0)");
}

std::vector<double> parse_double_list(const std::string& text,
                                      const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw config_error(what + ": empty element");
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw config_error(what + ": cannot parse '" + item + "'");
        }
        if (used != item.size())
            throw config_error(what + ": cannot parse '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw config_error(what + ": empty list");
    return out;
}

HiddenVariableConfig config_from(const GenOpts& o) {
    const std::string& d = o.dist;
    const auto colon = d.find(':');
    const std::string name = d.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : d.substr(colon + 1);
    if (name == "bernoulli") {
        const double p = arg.empty() ? 0.5 : parse_double_list(arg, "--dist")[0];
        if (o.n < 1) throw config_error("--n is required for sampled graphs");
        return HiddenVariableConfig::bernoulli(o.n, p, o.theta, o.seed);
    }
    if (name == "uniform") {
        std::vector<double> b =
            arg.empty() ? std::vector<double>{0.0, 1.0}
                        : parse_double_list(arg, "--dist");
        if (b.size() != 2)
            throw config_error("--dist uniform needs LO,HI");
        if (o.n < 1) throw config_error("--n is required for sampled graphs");
        return HiddenVariableConfig::uniform(o.n, b[0], b[1], o.theta, o.seed);
    }
    if (name == "explicit") {
        std::vector<double> vals = parse_double_list(arg, "--dist explicit");
        if (o.n != 0 && o.n != static_cast<index_t>(vals.size()))
            throw config_error("--n disagrees with explicit value count");
        return HiddenVariableConfig::explicit_values(std::move(vals), o.theta);
    }
    throw config_error("--dist must be bernoulli, uniform or explicit");
}

ThresholdGraph obtain_graph(const GenOpts& o) {
    if (!o.graph_path.empty()) return load_graph(o.graph_path);
    return generate(config_from(o));
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw config_error("cannot open output file " + path);
    out << content;
    if (!out) throw config_error("write failure on " + path);
}

index_t resolve_start(const ThresholdGraph& g, index_t start_index,
                      const std::string& start_part) {
    if (start_index >= 0) {
        if (!start_part.empty())
            throw config_error("--start and --start-part are exclusive");
        return start_index;
    }
    const std::string part = start_part.empty() ? "v1" : start_part;
    if (part == "v1") return g.start_vertex(1);
    if (part == "v0") return g.start_vertex(0);
    throw config_error("--start-part must be v1 or v0");
}

std::string distribution_csv(const ThresholdGraph& g,
                             const std::vector<double>& masses,
                             const std::vector<complex_t>* amps,
                             const double* t) {
    std::string out = "vertex,level,part,mass";
    if (t) out = "t," + out;
    if (amps) out += ",amp_re,amp_im";
    out += '\n';
    for (index_t v = 0; v < g.n(); ++v) {
        const LevelPart lp = g.level_of(v);
        std::string row;
        if (t) row += format_double(*t) + ",";
        row += std::to_string(v) + "," + std::to_string(lp.level) + "," +
               std::to_string(lp.part) + "," + format_double(masses[v]);
        if (amps)
            row += "," + format_double((*amps)[v].real()) + "," +
                   format_double((*amps)[v].imag());
        out += row + '\n';
    }
    return out;
}

int cmd_generate(const GenOpts& gen, const std::string& out_path,
                 const std::string& edge_path) {
    ThresholdGraph g = generate(config_from(gen));
    write_output(out_path, graph_to_json(g));
    if (!edge_path.empty()) {
        std::ofstream out(edge_path, std::ios::binary);
        if (!out) throw config_error("cannot open output file " + edge_path);
        write_edge_list(g, out);
        if (!out) throw config_error("write failure on " + edge_path);
    }
    return exit_ok;
}

int cmd_spectrum(const GenOpts& gen, const std::string& out_path,
                 const std::string& vectors_path) {
    ThresholdGraph g = obtain_graph(gen);
    SpectralDecomposition dec(g);
    ordered_json j;
    j["n"] = dec.n();
    ordered_json spectrum = ordered_json::array();
    for (auto [value, mult] : dec.spectrum()) {
        ordered_json item;
        item["eigenvalue"] = value;
        item["multiplicity"] = mult;
        spectrum.push_back(std::move(item));
    }
    j["spectrum"] = std::move(spectrum);
    write_output(out_path, j.dump(2) + "\n");

    if (!vectors_path.empty()) {
        std::string csv = "eigenvalue";
        for (index_t i = 0; i < dec.n(); ++i)
            csv += ",c" + std::to_string(i);
        csv += '\n';
        std::size_t row = 0;
        std::vector<std::vector<double>> vecs = dec.dense_vectors();
        for (const EigenComponent& c : dec.components())
            for (index_t i = 0; i < c.multiplicity; ++i) {
                csv += std::to_string(c.eigenvalue);
                for (double x : vecs[row])
                    csv += "," + format_double(x);
                csv += '\n';
                ++row;
            }
        write_output(vectors_path, csv);
    }
    return exit_ok;
}

struct TimeSpec {
    double t = -1.0;
    double t0 = 0.0, t1 = 0.0;
    index_t steps = 0;
    bool grid = false;

    std::vector<double> times() const {
        if (!grid) return {t};
        std::vector<double> out;
        for (index_t j = 0; j <= steps; ++j)
            out.push_back(t0 + (t1 - t0) * static_cast<double>(j) /
                                   static_cast<double>(steps));
        return out;
    }
};

void add_time_opts(CLI::App* cmd, TimeSpec& ts) {
    cmd->add_option("--t", ts.t, "Evolution time");
    cmd->add_option("--t0", ts.t0, "Grid start time");
    cmd->add_option("--t1", ts.t1, "Grid end time");
    cmd->add_option("--steps", ts.steps, "Grid interval count");
}

void finish_time_opts(const CLI::App* cmd, TimeSpec& ts) {
    const bool single = cmd->count("--t") > 0;
    const bool grid = cmd->count("--t0") > 0 || cmd->count("--t1") > 0 ||
                      cmd->count("--steps") > 0;
    if (single == grid)
        throw config_error("give either --t or all of --t0/--t1/--steps");
    if (grid) {
        if (cmd->count("--t0") == 0 || cmd->count("--t1") == 0 ||
            cmd->count("--steps") == 0)
            throw config_error("grid needs --t0, --t1 and --steps");
        if (ts.steps < 1) throw config_error("--steps must be >= 1");
        if (!(ts.t1 >= ts.t0)) throw config_error("--t1 must be >= --t0");
        ts.grid = true;
    }
}

int cmd_evolve(const GenOpts& gen, const std::string& walk,
               const std::string& method_name, index_t start_index,
               const std::string& start_part, const TimeSpec& ts,
               bool amplitudes, const std::string& out_path) {
    ThresholdGraph g = obtain_graph(gen);
    const index_t start = resolve_start(g, start_index, start_part);
    Method method = Method::closed_form;
    if (method_name == "spectral") method = Method::spectral;
    else if (method_name != "closed-form")
        throw config_error("--method must be closed-form or spectral");

    const bool quantum_walk = walk == "quantum";
    if (!quantum_walk && walk != "classical")
        throw config_error("--walk must be quantum or classical");
    if (!quantum_walk && amplitudes)
        throw config_error("--amplitudes applies to the quantum walk only");

    const std::vector<double> times = ts.times();
    std::string out;
    bool wrote_header = false;
    for (double t : times) {
        std::string block;
        if (quantum_walk) {
            AmplitudeVector amp = quantum::evolve(g, start, t, method);
            ProbabilityDistribution dist = quantum::probability(amp);
            block = distribution_csv(g, dist.masses,
                                     amplitudes ? &amp.amplitudes : nullptr,
                                     ts.grid ? &t : nullptr);
        } else {
            ClassicalDistribution dist = classical::evolve(g, start, t);
            block = distribution_csv(g, dist.masses, nullptr,
                                     ts.grid ? &t : nullptr);
        }
        if (wrote_header)
            block.erase(0, block.find('\n') + 1);
        out += block;
        wrote_header = true;
    }
    write_output(out_path, out);
    return exit_ok;
}

int cmd_time_average(const GenOpts& gen, const std::string& walk,
                     index_t start_index, const std::string& start_part,
                     const std::string& out_path) {
    ThresholdGraph g = obtain_graph(gen);
    const index_t start = resolve_start(g, start_index, start_part);
    std::vector<double> masses;
    if (walk == "quantum") {
        masses = quantum::time_averaged(g, start).masses;
    } else if (walk == "classical") {
        masses = classical::time_average(g, start).masses;
    } else {
        throw config_error("--walk must be quantum or classical");
    }
    write_output(out_path, distribution_csv(g, masses, nullptr, nullptr));
    return exit_ok;
}

int cmd_verify(const GenOpts& gen, double t, double tol,
               const std::string& out_path) {
    ThresholdGraph g = obtain_graph(gen);
    if (g.n() > oracle::max_dim)
        throw argument_error("verify: n must be <= 512 for the oracle path");
    if (!g.connected())
        throw precondition_error("verify: graph must be connected");

    const dense::ComplexMatrix closed =
        quantum::propagator(g, t, Method::closed_form);
    const dense::ComplexMatrix spectral =
        quantum::propagator(g, t, Method::spectral);
    const dense::RealMatrix lap = dense::laplacian_dense(g);
    const dense::ComplexMatrix series = oracle::expm(lap, complex_t{0.0, t});
    const dense::ComplexMatrix eigen =
        oracle::expm_via_eigen(lap, complex_t{0.0, t});

    const double closed_vs_series = dense::max_abs_diff(closed, series);
    const double spectral_vs_series = dense::max_abs_diff(spectral, series);
    const double closed_vs_spectral = dense::max_abs_diff(closed, spectral);
    const double series_vs_eigen = dense::max_abs_diff(series, eigen);
    const bool pass = closed_vs_series <= tol && spectral_vs_series <= tol &&
                      closed_vs_spectral <= tol && series_vs_eigen <= tol;

    ordered_json j;
    j["n"] = g.n();
    j["t"] = t;
    j["tolerance"] = tol;
    j["max_abs_deviation"]["closed_vs_expm"] = closed_vs_series;
    j["max_abs_deviation"]["spectral_vs_expm"] = spectral_vs_series;
    j["max_abs_deviation"]["closed_vs_spectral"] = closed_vs_spectral;
    j["max_abs_deviation"]["expm_vs_eigensynthesis"] = series_vs_eigen;
    j["pass"] = pass;
    write_output(out_path, j.dump(2) + "\n");
    return pass ? exit_ok : exit_verify_failed;
}

std::vector<std::uint64_t> parse_u64_list(const std::string& text,
                                          const std::string& what) {
    std::vector<std::uint64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto dots = item.find("..");
        try {
            if (dots == std::string::npos) {
                out.push_back(std::stoull(item));
            } else {
                const std::uint64_t a = std::stoull(item.substr(0, dots));
                const std::uint64_t b = std::stoull(item.substr(dots + 2));
                if (b < a) throw config_error(what + ": descending range");
                for (std::uint64_t v = a; v <= b; ++v) out.push_back(v);
            }
        } catch (const config_error&) {
            throw;
        } catch (const std::exception&) {
            throw config_error(what + ": cannot parse '" + item + "'");
        }
    }
    if (out.empty()) throw config_error(what + ": empty list");
    return out;
}

int cmd_sweep(const std::string& kind_name, const std::string& sizes_text,
              const std::string& seeds_text, double p, double theta, double t,
              const std::string& start_part, const std::string& format,
              const std::string& out_path) {
    sweep::Request req;
    if (kind_name == "rates") req.kind = sweep::Kind::rates;
    else if (kind_name == "classical-spread")
        req.kind = sweep::Kind::classical_spread;
    else if (kind_name == "contrast") req.kind = sweep::Kind::contrast;
    else throw config_error("--kind must be rates, classical-spread or contrast");

    for (std::uint64_t v : parse_u64_list(sizes_text, "--sizes"))
        req.sizes.push_back(static_cast<index_t>(v));
    req.seeds = parse_u64_list(seeds_text, "--seeds");
    req.p = p;
    req.theta = theta;
    req.t = t;
    if (start_part == "v1") req.start_part = 1;
    else if (start_part == "v0") req.start_part = 0;
    else throw config_error("--start-part must be v1 or v0");

    const std::vector<sweep::Row> rows = sweep::run(req);
    if (format == "csv") write_output(out_path, sweep::to_csv(rows));
    else if (format == "json") write_output(out_path, sweep::to_json(rows));
    else throw config_error("--format must be csv or json");
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Continuous-time quantum and classical walks on threshold "
                 "graphs via closed-form spectra"};
    app.require_subcommand(1);

    GenOpts gen_gen, gen_spec, gen_evolve, gen_avg, gen_verify;
    std::string out_generate, out_edges;
    auto* c_generate =
        app.add_subcommand("generate", "Sample a graph and write it as JSON");
    add_gen_opts(c_generate, gen_gen, false);
    c_generate->add_option("--out", out_generate, "Output path (default stdout)");
    c_generate->add_option("--edge-list", out_edges,
                           "Also write a 'u w' edge list to this path");

    std::string out_spectrum, out_vectors;
    auto* c_spectrum = app.add_subcommand(
        "spectrum", "Laplacian eigenvalues and multiplicities as JSON");
    add_gen_opts(c_spectrum, gen_spec, true);
    c_spectrum->add_option("--out", out_spectrum, "Output path (default stdout)");
    c_spectrum->add_option("--vectors-csv", out_vectors,
                           "Write eigenvectors as CSV rows to this path");

    std::string walk_evolve = "quantum", method_evolve = "closed-form";
    std::string part_evolve, out_evolve;
    index_t start_evolve = -1;
    bool amplitudes = false;
    TimeSpec ts_evolve;
    auto* c_evolve = app.add_subcommand(
        "evolve", "Walk distribution at one time or over a time grid (CSV)");
    add_gen_opts(c_evolve, gen_evolve, true);
    c_evolve->add_option("--walk", walk_evolve, "quantum or classical");
    c_evolve->add_option("--method", method_evolve,
                         "closed-form or spectral (quantum walk)");
    c_evolve->add_option("--start", start_evolve, "Start vertex (canonical)");
    c_evolve->add_option("--start-part", part_evolve,
                         "v1 (top clique) or v0 (level-1 null), default v1");
    add_time_opts(c_evolve, ts_evolve);
    c_evolve->add_flag("--amplitudes", amplitudes,
                       "Include amplitude real/imag columns");
    c_evolve->add_option("--out", out_evolve, "Output path (default stdout)");

    std::string walk_avg = "quantum", part_avg, out_avg;
    index_t start_avg = -1;
    auto* c_avg = app.add_subcommand(
        "time-average", "Long-run average occupation per vertex (CSV)");
    add_gen_opts(c_avg, gen_avg, true);
    c_avg->add_option("--walk", walk_avg, "quantum or classical");
    c_avg->add_option("--start", start_avg, "Start vertex (canonical)");
    c_avg->add_option("--start-part", part_avg, "v1 or v0, default v1");
    c_avg->add_option("--out", out_avg, "Output path (default stdout)");

    double verify_t = 1.0, verify_tol = 1e-9;
    std::string out_verify;
    auto* c_verify = app.add_subcommand(
        "verify",
        "Cross-check closed-form, spectral and brute-force propagators");
    add_gen_opts(c_verify, gen_verify, true);
    c_verify->add_option("--t", verify_t, "Evolution time (default 1)");
    c_verify->add_option("--tol", verify_tol, "Tolerance (default 1e-9)");
    c_verify->add_option("--out", out_verify, "Report path (default stdout)");

    std::string sweep_kind = "rates", sweep_sizes, sweep_seeds;
    std::string sweep_part = "v1", sweep_format = "csv", out_sweep;
    double sweep_p = 0.5, sweep_theta = 0.5, sweep_t = 1.0;
    auto* c_sweep = app.add_subcommand(
        "sweep", "Seeded family statistics over (sizes x seeds), CSV or JSON");
    c_sweep->add_option("--kind", sweep_kind,
                        "rates, classical-spread or contrast");
    c_sweep->add_option("--sizes", sweep_sizes, "e.g. 64,256,1024")->required();
    c_sweep->add_option("--seeds", sweep_seeds, "e.g. 1..20 or 1,5,9")
        ->required();
    c_sweep->add_option("--p", sweep_p, "Bernoulli value probability");
    c_sweep->add_option("--theta", sweep_theta, "Threshold (default 0.5)");
    c_sweep->add_option("--t", sweep_t, "Evolution time where applicable");
    c_sweep->add_option("--start-part", sweep_part, "v1 or v0");
    c_sweep->add_option("--format", sweep_format, "csv or json");
    c_sweep->add_option("--out", out_sweep, "Output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (c_generate->parsed())
            return cmd_generate(gen_gen, out_generate, out_edges);
        if (c_spectrum->parsed())
            return cmd_spectrum(gen_spec, out_spectrum, out_vectors);
        if (c_evolve->parsed()) {
            finish_time_opts(c_evolve, ts_evolve);
            return cmd_evolve(gen_evolve, walk_evolve, method_evolve,
                              start_evolve, part_evolve, ts_evolve, amplitudes,
                              out_evolve);
        }
        if (c_avg->parsed())
            return cmd_time_average(gen_avg, walk_avg, start_avg, part_avg,
                                    out_avg);
        if (c_verify->parsed())
            return cmd_verify(gen_verify, verify_t, verify_tol, out_verify);
        if (c_sweep->parsed())
            return cmd_sweep(sweep_kind, sweep_sizes, sweep_seeds, sweep_p,
                             sweep_theta, sweep_t, sweep_part, sweep_format,
                             out_sweep);
        std::cerr << "no subcommand selected\n";
        return exit_usage;
    } catch (const config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const argument_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const precondition_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_precondition;
    } catch (const error& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
}
