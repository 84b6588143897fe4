#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tlpool/bench/montecarlo.hpp"
#include "tlpool/bench/pairs.hpp"

namespace tlpool::harness {

enum class Benchmark { montecarlo, pairs };
enum class Mode { fresh, cached, pooled, unpooled };

std::string_view to_string(Benchmark b) noexcept;
std::string_view to_string(Mode m) noexcept;
std::optional<Benchmark> parse_benchmark(std::string_view text) noexcept;
std::optional<Mode> parse_mode(std::string_view text) noexcept;

/// Modes that can be run by the given benchmark, in report order.
std::vector<Mode> modes_for(Benchmark b);

struct ExperimentConfig {
    Benchmark benchmark = Benchmark::pairs;
    std::vector<Mode> modes;
    std::vector<std::uint32_t> threads{1};
    /// Evaluation counts (montecarlo) or object counts (pairs).
    std::vector<std::uint64_t> workloads;
    /// Montecarlo only; ignored for pairs.
    std::vector<std::size_t> dims{1000};
    std::size_t ring_size = 10000;
    std::size_t pool_size = 100000;
    std::uint64_t seed = 0;
    std::uint32_t repeats = 10;
    double lower = bench::kRastriginLow;
    double upper = bench::kRastriginHigh;
    bench::ValuePrecision precision = bench::ValuePrecision::double_precision;

    /// Throws std::invalid_argument describing the first problem found.
    void validate() const;
};

struct ReportRow {
    Benchmark benchmark;
    Mode mode;
    std::uint32_t threads;
    std::uint64_t workload;
    std::size_t dim;  // 0 for pairs
    std::uint32_t repetition;
    std::int64_t duration_ms;
    std::uint64_t peak_mem_bytes;
    double checksum;

    bool operator==(const ReportRow&) const = default;
};

struct BenchReport {
    std::vector<ReportRow> rows;
};

class DeterminismError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Called after each timed run, e.g. for progress output.
using RowObserver = std::function<void(const ReportRow&)>;

struct Cell {
    Mode mode;
    std::uint32_t threads;
    std::uint64_t workload;
    std::size_t dim;
};

struct CellOutcome {
    std::chrono::nanoseconds elapsed;
    std::uint64_t peak_mem_bytes;
    double checksum;
};

/// Executes one run of a cell.
using CellRunner = std::function<CellOutcome(const ExperimentConfig&, const Cell&)>;

/// The runner used by run_experiment(): calls the real benchmark.
CellOutcome run_benchmark_cell(const ExperimentConfig& config, const Cell& cell);

/**
 * Runs the cross product threads x workloads x dims x modes, `repeats` times.
 * Repetitions are the outermost loop and modes the innermost. Each cell gets
 * one untimed warm-up run before its first repetition. Every run of a cell
 * (warm-up included) must produce the same checksum, otherwise
 * DeterminismError is thrown.
 */
BenchReport run_experiment(const ExperimentConfig& config, const RowObserver& observer = {});

/// Same loop with a custom runner.
BenchReport run_experiment(const ExperimentConfig& config, const CellRunner& runner, const RowObserver& observer = {});

} // namespace tlpool::harness
