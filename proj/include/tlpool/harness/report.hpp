#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "tlpool/harness/experiment.hpp"

namespace tlpool::harness {

inline constexpr const char* kCsvHeader =
    "benchmark,mode,threads,workload,dim,repetition,duration_ms,peak_mem_bytes,checksum";

/// Header line plus one line per row. Checksums use the shortest decimal form
/// that reads back to the same double; no locale is involved.
void write_csv(const BenchReport& report, std::ostream& out);

/// write_csv() to a file. Throws std::runtime_error naming the path on I/O failure.
void emit_csv(const BenchReport& report, const std::filesystem::path& path);

struct ModeStats {
    Mode mode;
    std::size_t runs = 0;
    double mean_ms = 0.0;
    std::int64_t min_ms = 0;
};

struct CellSummary {
    Benchmark benchmark;
    std::uint32_t threads;
    std::uint64_t workload;
    std::size_t dim;
    std::vector<ModeStats> modes;
    /// Mean(unpooled)/mean(pooled) or mean(fresh)/mean(cached); empty when not computable.
    std::optional<double> ratio;
    std::string note;
};

/// Groups rows by (benchmark, threads, workload, dim) in first-seen order.
std::vector<CellSummary> summarize_cells(const BenchReport& report);

/// Plain-text table of summarize_cells().
std::string summarize(const BenchReport& report);

} // namespace tlpool::harness
