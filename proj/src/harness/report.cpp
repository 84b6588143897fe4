#include "tlpool/harness/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace tlpool::harness {
namespace {

std::string shortest(double value) {
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw std::runtime_error("cannot format checksum");
    }
    return std::string(buf.data(), end);
}

// Numerator and denominator modes for the speedup ratio.
std::pair<Mode, Mode> ratio_modes(Benchmark b) {
    return b == Benchmark::montecarlo ? std::pair{Mode::fresh, Mode::cached}
                                      : std::pair{Mode::unpooled, Mode::pooled};
}

} // namespace

void write_csv(const BenchReport& report, std::ostream& out) {
    out << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
        out << to_string(r.benchmark) << ',' << to_string(r.mode) << ',' << r.threads << ',' << r.workload << ','
            << r.dim << ',' << r.repetition << ',' << r.duration_ms << ',' << r.peak_mem_bytes << ','
            << shortest(r.checksum) << '\n';
    }
}

void emit_csv(const BenchReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    }
    out.imbue(std::locale::classic());
    write_csv(report, out);
    out.flush();
    if (!out) {
        throw std::runtime_error("error while writing '" + path.string() + "'");
    }
}

std::vector<CellSummary> summarize_cells(const BenchReport& report) {
    std::vector<CellSummary> cells;
    auto find_cell = [&](const ReportRow& r) -> CellSummary& {
        for (auto& c : cells) {
            if (c.benchmark == r.benchmark && c.threads == r.threads && c.workload == r.workload && c.dim == r.dim) {
                return c;
            }
        }
        return cells.emplace_back(CellSummary{r.benchmark, r.threads, r.workload, r.dim, {}, std::nullopt, {}});
    };

    for (const auto& r : report.rows) {
        CellSummary& cell = find_cell(r);
        auto it = std::find_if(cell.modes.begin(), cell.modes.end(), [&](const ModeStats& s) { return s.mode == r.mode; });
        if (it == cell.modes.end()) {
            cell.modes.push_back(ModeStats{r.mode, 0, 0.0, r.duration_ms});
            it = cell.modes.end() - 1;
        }
        // mean_ms holds the running total until the pass below
        it->runs += 1;
        it->mean_ms += static_cast<double>(r.duration_ms);
        it->min_ms = std::min(it->min_ms, r.duration_ms);
    }

    for (auto& cell : cells) {
        for (auto& s : cell.modes) {
            s.mean_ms /= static_cast<double>(s.runs);
        }
        const auto [num_mode, den_mode] = ratio_modes(cell.benchmark);
        auto stats_for = [&](Mode m) -> const ModeStats* {
            for (const auto& s : cell.modes) {
                if (s.mode == m) return &s;
            }
            return nullptr;
        };
        const ModeStats* num = stats_for(num_mode);
        const ModeStats* den = stats_for(den_mode);
        if (num == nullptr || den == nullptr) {
            cell.note = fmt::format("ratio omitted: no '{}' runs", to_string(num == nullptr ? num_mode : den_mode));
        } else if (den->mean_ms <= 0.0) {
            cell.note = fmt::format("ratio omitted: mean '{}' duration is 0 ms", to_string(den_mode));
        } else {
            cell.ratio = num->mean_ms / den->mean_ms;
        }
    }
    return cells;
}

std::string summarize(const BenchReport& report) {
    const auto cells = summarize_cells(report);
    std::string out = fmt::format("{:<10} {:>7} {:>12} {:>6} {:<9} {:>5} {:>12} {:>10} {:>8}\n", "benchmark",
                                  "threads", "workload", "dim", "mode", "runs", "mean_ms", "min_ms", "ratio");
    for (const auto& cell : cells) {
        const auto bench = to_string(cell.benchmark);
        for (std::size_t i = 0; i < cell.modes.size(); ++i) {
            const auto& s = cell.modes[i];
            std::string ratio;
            if (i + 1 == cell.modes.size()) {
                ratio = cell.ratio ? fmt::format("{:.3f}", *cell.ratio) : "-";
            }
            out += fmt::format("{:<10} {:>7} {:>12} {:>6} {:<9} {:>5} {:>12.1f} {:>10} {:>8}\n", bench, cell.threads,
                               cell.workload, cell.dim, to_string(s.mode), s.runs, s.mean_ms, s.min_ms, ratio);
        }
        if (!cell.note.empty()) {
            out += "  note: " + cell.note + "\n";
        }
    }
    return out;
}

} // namespace tlpool::harness
