#include "tlpool/harness/experiment.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <map>
#include <tuple>

#include "tlpool/bench/memory.hpp"

namespace tlpool::harness {

std::string_view to_string(Benchmark b) noexcept {
    return b == Benchmark::montecarlo ? "montecarlo" : "pairs";
}

std::string_view to_string(Mode m) noexcept {
    switch (m) {
    case Mode::fresh: return "fresh";
    case Mode::cached: return "cached";
    case Mode::pooled: return "pooled";
    case Mode::unpooled: return "unpooled";
    }
    return "?";
}

std::optional<Benchmark> parse_benchmark(std::string_view text) noexcept {
    if (text == "montecarlo") return Benchmark::montecarlo;
    if (text == "pairs") return Benchmark::pairs;
    return std::nullopt;
}

std::optional<Mode> parse_mode(std::string_view text) noexcept {
    for (Mode m : {Mode::fresh, Mode::cached, Mode::pooled, Mode::unpooled}) {
        if (text == to_string(m)) return m;
    }
    return std::nullopt;
}

std::vector<Mode> modes_for(Benchmark b) {
    if (b == Benchmark::montecarlo) return {Mode::fresh, Mode::cached};
    return {Mode::unpooled, Mode::pooled};
}

void ExperimentConfig::validate() const {
    if (modes.empty()) {
        throw std::invalid_argument("at least one mode is required");
    }
    const auto allowed = modes_for(benchmark);
    for (Mode m : modes) {
        if (std::find(allowed.begin(), allowed.end(), m) == allowed.end()) {
            throw std::invalid_argument("mode '" + std::string(to_string(m)) + "' is not valid for benchmark '" +
                                        std::string(to_string(benchmark)) + "'");
        }
    }
    if (threads.empty() || workloads.empty()) {
        throw std::invalid_argument("thread and workload lists must be non-empty");
    }
    if (benchmark == Benchmark::montecarlo && dims.empty()) {
        throw std::invalid_argument("montecarlo needs at least one dimension");
    }
    if (repeats < 1) {
        throw std::invalid_argument("repeats must be >= 1");
    }
    if (ring_size < 1 || pool_size < 1) {
        throw std::invalid_argument("ring size and pool size must be >= 1");
    }
    if (!(lower <= upper)) {
        throw std::invalid_argument("lower bound exceeds upper bound");
    }
    for (auto t : threads) {
        if (t < 1) {
            throw std::invalid_argument("thread counts must be >= 1");
        }
        for (auto w : workloads) {
            if (w < t) {
                throw std::invalid_argument("workload " + std::to_string(w) + " is smaller than thread count " +
                                            std::to_string(t));
            }
        }
    }
    if (benchmark == Benchmark::montecarlo) {
        for (auto d : dims) {
            if (d < 1) {
                throw std::invalid_argument("dimensions must be >= 1");
            }
        }
    }
}

CellOutcome run_benchmark_cell(const ExperimentConfig& cfg, const Cell& cell) {
    if (cfg.benchmark == Benchmark::montecarlo) {
        bench::MonteCarloConfig mc{
            .bounds = bench::BoxBounds::uniform(cell.dim, cfg.lower, cfg.upper),
            .total_evals = cell.workload,
            .threads = cell.threads,
            .seed = cfg.seed,
            .mode = cell.mode == Mode::fresh ? bench::GeneratorMode::fresh : bench::GeneratorMode::cached,
        };
        bench::reset_peak_rss();
        const auto result = bench::monte_carlo_optimize(mc);
        return {result.elapsed, bench::peak_rss_bytes_or_zero(), result.best.value};
    }
    bench::PairWorkload w{
        .total_objects = cell.workload,
        .threads = cell.threads,
        .ring_size = cfg.ring_size,
        .mode = cell.mode == Mode::pooled ? bench::PairsMode::pooled : bench::PairsMode::unpooled,
        .pool_size = cfg.pool_size,
        .precision = cfg.precision,
    };
    const auto result = bench::run_pairs_benchmark(w);
    return {result.elapsed, result.peak_mem_bytes, result.total_value};
}

namespace {

using CellKey = std::tuple<Mode, std::uint32_t, std::uint64_t, std::size_t>;

std::string describe(const ExperimentConfig& cfg, const CellKey& key) {
    const auto& [mode, threads, workload, dim] = key;
    std::string text = std::string(to_string(cfg.benchmark)) + "/" + std::string(to_string(mode)) +
                       " threads=" + std::to_string(threads) + " workload=" + std::to_string(workload);
    if (cfg.benchmark == Benchmark::montecarlo) {
        text += " dim=" + std::to_string(dim);
    }
    return text;
}

} // namespace

BenchReport run_experiment(const ExperimentConfig& config, const RowObserver& observer) {
    return run_experiment(config, run_benchmark_cell, observer);
}

BenchReport run_experiment(const ExperimentConfig& config, const CellRunner& runner, const RowObserver& observer) {
    config.validate();
    const std::vector<std::size_t> dims =
        config.benchmark == Benchmark::montecarlo ? config.dims : std::vector<std::size_t>{0};

    BenchReport report;
    std::map<CellKey, std::uint64_t> checksum_bits;

    auto check = [&](const CellKey& key, double checksum) {
        const auto bits = std::bit_cast<std::uint64_t>(checksum);
        auto [it, inserted] = checksum_bits.emplace(key, bits);
        if (!inserted && it->second != bits) {
            throw DeterminismError("checksum changed between runs of " + describe(config, key) + ": " +
                                   std::to_string(std::bit_cast<double>(it->second)) + " vs " +
                                   std::to_string(checksum));
        }
    };

    for (std::uint32_t rep = 0; rep < config.repeats; ++rep) {
        for (auto threads : config.threads) {
            for (auto workload : config.workloads) {
                for (auto dim : dims) {
                    for (Mode mode : config.modes) {
                        const CellKey key{mode, threads, workload, dim};
                        const Cell cell{mode, threads, workload, dim};
                        if (rep == 0) {
                            check(key, runner(config, cell).checksum);  // warm-up
                        }
                        const CellOutcome outcome = runner(config, cell);
                        check(key, outcome.checksum);
                        ReportRow row{
                            .benchmark = config.benchmark,
                            .mode = mode,
                            .threads = threads,
                            .workload = workload,
                            .dim = dim,
                            .repetition = rep,
                            .duration_ms =
                                std::chrono::duration_cast<std::chrono::milliseconds>(outcome.elapsed).count(),
                            .peak_mem_bytes = outcome.peak_mem_bytes,
                            .checksum = outcome.checksum,
                        };
                        if (observer) {
                            observer(row);
                        }
                        report.rows.push_back(row);
                    }
                }
            }
        }
    }
    return report;
}

} // namespace tlpool::harness
