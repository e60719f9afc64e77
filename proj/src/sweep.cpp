#include "ctwalk/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "ctwalk/classical.hpp"
#include "ctwalk/format.hpp"
#include "ctwalk/quantum.hpp"
#include "ctwalk/spectral.hpp"

namespace ctwalk {
namespace sweep {

namespace {

// Deterministic reseeding for the rare unusable draw (disconnected, or no
// null vertex when one is required).
ThresholdGraph sample_binary(index_t n, double p, double theta,
                             std::uint64_t seed, bool need_null) {
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
        const std::uint64_t s = seed + attempt * 0x9E3779B97F4A7C15ULL;
        ThresholdGraph g =
            generate(HiddenVariableConfig::bernoulli(n, p, theta, s));
        if (!g.connected()) continue;
        if (need_null && g.blocks().l(1) == 0) continue;
        return g;
    }
    throw precondition_error("sweep: no usable sample for this seed");
}

std::vector<Row> run_task(const Request& req, index_t n, std::uint64_t seed) {
    std::vector<Row> rows;
    switch (req.kind) {
    case Kind::rates: {
        ThresholdGraph g = sample_binary(n, req.p, req.theta, seed, true);
        SpectralDecomposition dec(g);
        const index_t v1 = g.start_vertex(1);
        const index_t v0 = g.start_vertex(0);
        const double nd = static_cast<double>(n);
        const double r1 =
            nd * (1.0 - quantum::time_averaged_spectral(dec, v1).masses[v1]);
        const double r0 =
            nd * (1.0 - quantum::time_averaged_spectral(dec, v0).masses[v0]);
        rows.push_back({n, seed, false, "qw_rate_v1", r1});
        rows.push_back({n, seed, false, "qw_rate_v0", r0});
        break;
    }
    case Kind::classical_spread: {
        ThresholdGraph g =
            sample_binary(n, req.p, req.theta, seed, req.start_part == 0);
        SpectralDecomposition dec(g);
        const index_t v = g.start_vertex(req.start_part);
        const double dev = classical::spread_deviation(
            classical::evolve_spectral(dec, v, req.t));
        rows.push_back({n, seed, false, "classical_uniform_dev", dev});
        break;
    }
    case Kind::contrast: {
        ThresholdGraph g =
            sample_binary(n, req.p, req.theta, seed, req.start_part == 0);
        SpectralDecomposition dec(g);
        const index_t v = g.start_vertex(req.start_part);
        const double qp = quantum::probability(g, v, req.t).masses[v];
        const double cp = classical::evolve_spectral(dec, v, req.t).masses[v];
        rows.push_back({n, seed, false, "quantum_return_prob", qp});
        rows.push_back({n, seed, false, "classical_return_prob", cp});
        break;
    }
    }
    return rows;
}

} // namespace

int thread_count() {
    if (const char* env = std::getenv("CTWALK_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::vector<Row> run(const Request& req) {
    if (req.sizes.empty() || req.seeds.empty())
        throw config_error("sweep: sizes and seeds must be non-empty");
    if (req.start_part != 0 && req.start_part != 1)
        throw config_error("sweep: start part must be 0 or 1");

    struct Task {
        index_t n;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (index_t n : req.sizes)
        for (std::uint64_t seed : req.seeds) tasks.push_back({n, seed});

    std::vector<std::vector<Row>> results(tasks.size());
    std::atomic<std::size_t> cursor{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                results[i] = run_task(req, tasks[i].n, tasks[i].seed);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };

    const int threads =
        std::min<int>(thread_count(), static_cast<int>(tasks.size()));
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<Row> rows;
    for (const auto& part : results)
        rows.insert(rows.end(), part.begin(), part.end());
    append_medians(rows);
    return rows;
}

void append_medians(std::vector<Row>& rows) {
    struct Key {
        index_t n;
        std::string quantity;
    };
    std::vector<Key> keys;
    std::vector<std::vector<double>> groups;
    for (const Row& r : rows) {
        if (r.median) continue;
        std::size_t g = 0;
        for (; g < keys.size(); ++g)
            if (keys[g].n == r.n && keys[g].quantity == r.quantity) break;
        if (g == keys.size()) {
            keys.push_back({r.n, r.quantity});
            groups.emplace_back();
        }
        groups[g].push_back(r.value);
    }
    for (std::size_t g = 0; g < keys.size(); ++g) {
        std::vector<double>& vals = groups[g];
        std::sort(vals.begin(), vals.end());
        const std::size_t h = vals.size() / 2;
        const double med = vals.size() % 2 == 1
                               ? vals[h]
                               : 0.5 * (vals[h - 1] + vals[h]);
        rows.push_back({keys[g].n, 0, true, keys[g].quantity, med});
    }
}

std::string to_csv(const std::vector<Row>& rows) {
    std::string out = "n,seed,quantity,value\n";
    for (const Row& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += r.median ? "median" : std::to_string(r.seed);
        out += ',';
        out += r.quantity;
        out += ',';
        out += format_double(r.value);
        out += '\n';
    }
    return out;
}

std::string to_json(const std::vector<Row>& rows) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const Row& r : rows) {
        nlohmann::ordered_json item;
        item["n"] = r.n;
        if (r.median)
            item["seed"] = "median";
        else
            item["seed"] = r.seed;
        item["quantity"] = r.quantity;
        item["value"] = r.value;
        arr.push_back(std::move(item));
    }
    return arr.dump(2) + "\n";
}

} // namespace sweep
} // namespace ctwalk
