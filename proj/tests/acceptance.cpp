// Acceptance suite: one PASS/FAIL line per criterion.
//
// The process-wide pool size can only be set before the first pool exists, so
// every criterion that creates pools runs in a forked child; the parent process
// never touches a pool.

#include <bit>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <latch>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "support/csv_oracle.hpp"
#include "support/isolated.hpp"
#include "support/test_items.hpp"
#include "tlpool/bench/montecarlo.hpp"
#include "tlpool/bench/pairs.hpp"
#include "tlpool/harness/experiment.hpp"
#include "tlpool/harness/report.hpp"
#include "tlpool/registry.hpp"

using namespace tlpool;
using tlpool::testing::TaggedFactory;
using tlpool::testing::TaggedItem;
using Clock = std::chrono::steady_clock;

namespace {

// Collects failed expectations for one criterion.
class Expect {
public:
    explicit Expect(std::string prefix) : prefix_(std::move(prefix)) {}

    bool operator()(bool condition, const std::string& what) {
        if (!condition) {
            ok_ = false;
            std::cout << "    " << prefix_ << " failed: " << what << '\n';
        }
        return condition;
    }

    [[nodiscard]] bool ok() const { return ok_; }

private:
    std::string prefix_;
    bool ok_ = true;
};

template <typename Fn>
bool throws_with(Fn&& fn, const auto& type_probe, std::string_view message = {}) {
    using Error = std::remove_cvref_t<decltype(type_probe)>;
    try {
        fn();
    } catch (const Error& e) {
        return message.empty() || std::string_view(e.what()) == message;
    } catch (...) {
        return false;
    }
    return false;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same_bits(double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// ---------------------------------------------------------------------------
// 1. Pool invariants

bool pool_invariants_child() {
    Expect expect("pool");
    constexpr std::size_t kCapacity = 16;

    expect(get_pool_size() == kDefaultPoolSize, "default pool size is 100000");
    expect(throws_with([] { set_pool_size(0); }, std::invalid_argument("")), "set_pool_size(0) rejected");
    set_pool_size(kCapacity);
    expect(pool_size_reset_allowed(), "gate still open before any pool exists");

    std::thread([&] {
        const TaggedFactory<0> factory;
        auto& pool = get_thread_local_pool(factory);
        expect(pool.capacity() == kCapacity && pool.available() == kCapacity, "pool pre-filled to configured size");
        expect(!pool_size_reset_allowed(), "gate closed after first pool");
        expect(throws_with([] { set_pool_size(32); }, StateError("")), "set_pool_size after pool creation");

        // conservation and LIFO over random interleavings
        for (std::uint64_t seed = 0; seed < 100; ++seed) {
            std::mt19937_64 rng(seed);
            std::vector<Pooled<TaggedItem>> held;
            std::vector<const TaggedItem*> stack;
            for (std::size_t i = 0; i < pool.available(); ++i) stack.push_back(pool.slot(i));
            for (int step = 0; step < 80; ++step) {
                if (held.empty() || rng() % 2 == 0) {
                    auto item = acquire(factory, step);
                    if (stack.empty()) {
                        expect(!item->is_managed(), "exhausted pool yields unmanaged item");
                    } else {
                        expect(item.get() == stack.back(), "acquire returns most recently released item");
                        stack.pop_back();
                    }
                    held.push_back(std::move(item));
                } else {
                    const std::size_t pick = rng() % held.size();
                    auto item = std::move(held[pick]);
                    held.erase(held.begin() + static_cast<std::ptrdiff_t>(pick));
                    item->release();
                    if (item->is_managed()) stack.push_back(item.get());
                }
                std::size_t outstanding = 0;
                for (const auto& h : held) outstanding += h->is_managed() ? 1 : 0;
                if (!expect(pool.available() + outstanding == kCapacity, "available + outstanding == capacity")) {
                    return;
                }
            }
            for (auto& h : held) h->release();
        }

        // LIFO
        auto a = acquire(factory, 1);
        auto b = acquire(factory, 2);
        auto c = acquire(factory, 3);
        a->release();
        b->release();
        c->release();
        auto first = acquire(factory);
        auto second = acquire(factory);
        auto third = acquire(factory);
        expect(first.get() == c.get() && second.get() == b.get() && third.get() == a.get(),
               "release a,b,c then acquire x3 yields c,b,a");

        // double release
        first->release();
        expect(throws_with([&] { first->release(); }, LifecycleError(""), "Object not currently used"),
               "double release raises 'Object not currently used'");
        second->release();
        third->release();

        // exhaustion fallback and unmanaged release no-op
        std::vector<Pooled<TaggedItem>> all;
        for (std::size_t i = 0; i < kCapacity; ++i) all.push_back(acquire(factory, 0));
        auto extra = acquire(factory, 5);
        expect(!extra->is_managed() && extra->number() == 5, "capacity+1-th acquire is unmanaged");
        expect(!throws_with([&] { extra->release(); extra->release(); }, std::exception()),
               "unmanaged release is a no-op");
        expect(pool.available() == 0, "unmanaged release does not touch the pool");

        // cross-thread release
        bool ownership_error = false;
        std::thread([&] {
            try {
                all[0]->release();
            } catch (const OwnershipError&) {
                ownership_error = true;
            }
        }).join();
        expect(ownership_error, "release from another thread raises an ownership error");
        for (auto& h : all) h->release();
        expect(pool.available() == kCapacity, "pool whole after releasing everything");

        // per-thread distinctness
        const auto* mine = &pool;
        const void* other = nullptr;
        std::latch created(1);
        std::latch checked(1);
        std::thread t([&] {
            other = &get_thread_local_pool(factory);
            created.count_down();
            checked.wait();
        });
        created.wait();
        expect(other != static_cast<const void*>(mine), "threads get distinct pools");
        expect(&get_thread_local_pool(factory) == mine, "same thread gets the same pool");
        checked.count_down();
        t.join();
    }).join();
    return expect.ok();
}

// ---------------------------------------------------------------------------
// 2. Monte-Carlo mode equivalence

bool montecarlo_equivalence() {
    Expect expect("montecarlo");
    int cells = 0;
    for (std::size_t dim : {2u, 10u, 100u}) {
        for (std::uint64_t evals : {1000u, 100000u}) {
            for (std::uint32_t threads : {1u, 4u}) {
                for (std::uint64_t seed : {0u, 1u, 42u}) {
                    bench::MonteCarloConfig cfg{
                        .bounds = bench::BoxBounds::uniform(dim), .total_evals = evals, .threads = threads, .seed = seed};
                    cfg.mode = bench::GeneratorMode::fresh;
                    const auto fresh = bench::monte_carlo_optimize(cfg);
                    cfg.mode = bench::GeneratorMode::cached;
                    const auto cached = bench::monte_carlo_optimize(cfg);
                    const std::string tag = "dim=" + std::to_string(dim) + " evals=" + std::to_string(evals) +
                                            " threads=" + std::to_string(threads) + " seed=" + std::to_string(seed);
                    bool identical = same_bits(fresh.best.value, cached.best.value) &&
                                     fresh.best.point.size() == cached.best.point.size();
                    for (std::size_t i = 0; identical && i < fresh.best.point.size(); ++i) {
                        identical = same_bits(fresh.best.point[i], cached.best.point[i]);
                    }
                    expect(identical, tag + ": fresh and cached incumbents differ");
                    // recompute with a separate straight-line evaluation
                    double check = 10.0 * static_cast<double>(dim);
                    for (double x : fresh.best.point) {
                        check += x * x - 10.0 * std::cos(2.0 * 3.14159265358979323846 * x);
                    }
                    expect(same_bits(check, fresh.best.value), tag + ": value != rastrigin(point)");
                    ++cells;
                }
            }
        }
    }
    std::cout << "    " << cells << " cells compared\n";
    return expect.ok();
}

// ---------------------------------------------------------------------------
// 3. Rastrigin oracle (reference values from an independent 40-digit evaluation)

bool rastrigin_oracle() {
    Expect expect("rastrigin");
    for (std::size_t n : {1u, 10u, 1000u}) {
        expect(bench::rastrigin(std::vector<double>(n, 0.0)) == 0.0, "zero vector of dim " + std::to_string(n));
    }
    const double half = bench::rastrigin(std::vector<double>{0.5});
    const double one = bench::rastrigin(std::vector<double>{1.0});
    expect(std::abs(half - 20.25) <= 1e-9, "rastrigin([0.5]) = 20.25");
    expect(std::abs(one - 1.0) <= 1e-9, "rastrigin([1.0]) = 1.0");
    std::cout << std::setprecision(17) << "    rastrigin([0.5]) = " << half << ", rastrigin([1.0]) = " << one << '\n';
    return expect.ok();
}

// ---------------------------------------------------------------------------
// 4. Pairs checksum oracle

bool pairs_oracle_child(std::size_t pool_size) {
    Expect expect("pairs pool_size=" + std::to_string(pool_size));
    set_pool_size(static_cast<std::int64_t>(pool_size));
    int runs = 0;
    for (std::uint64_t n : {10u, 1000u, 1000000u}) {
        const double oracle = static_cast<double>(n) * static_cast<double>(n - 1);
        for (std::uint32_t threads : {1u, 3u, 8u}) {
            for (std::size_t ring : {1u, 7u, 10000u}) {
                double totals[2]{};
                for (auto mode : {bench::PairsMode::unpooled, bench::PairsMode::pooled}) {
                    const auto r = bench::run_pairs_benchmark(
                        {.total_objects = n, .threads = threads, .ring_size = ring, .mode = mode, .pool_size = pool_size});
                    totals[mode == bench::PairsMode::pooled] = r.total_value;
                    ++runs;
                }
                const std::string tag = "N=" + std::to_string(n) + " threads=" + std::to_string(threads) +
                                        " ring=" + std::to_string(ring);
                expect(totals[0] == oracle, tag + ": unpooled total != N(N-1)");
                expect(totals[1] == oracle, tag + ": pooled total != N(N-1)");
                expect(same_bits(totals[0], totals[1]), tag + ": pooled != unpooled");
                expect(bench::expected_pairs_sum(n) == oracle, tag + ": expected_pairs_sum mismatch");
            }
        }
    }
    std::cout << "    pool_size=" << pool_size << ": " << runs << " runs\n";
    return expect.ok();
}

// ---------------------------------------------------------------------------
// 5. Desk-scale performance report

std::uint32_t logical_processors() {
    return std::max(1u, std::thread::hardware_concurrency());
}

bool performance_pairs_child() {
    Expect expect("perf-pairs");
    harness::ExperimentConfig cfg;
    cfg.benchmark = harness::Benchmark::pairs;
    cfg.modes = {harness::Mode::unpooled, harness::Mode::pooled};
    cfg.threads = {logical_processors()};
    cfg.workloads = {50000000};
    cfg.repeats = 5;
    set_pool_size(static_cast<std::int64_t>(cfg.pool_size));
    const auto report = harness::run_experiment(cfg);
    harness::emit_csv(report, "acceptance_perf_pairs.csv");
    std::cout << harness::summarize(report);
    const auto cells = harness::summarize_cells(report);
    if (!expect(cells.size() == 1 && cells[0].ratio.has_value(), "unpooled/pooled ratio emitted")) {
        return false;
    }
    const double unpooled = cells[0].modes[0].mean_ms;
    const double pooled = cells[0].modes[1].mean_ms;
    std::cout << std::fixed << std::setprecision(3) << "    unpooled/pooled = " << *cells[0].ratio
              << " at threads=" << cfg.threads[0] << " (reference ratio 5.8/2.9 = 2.0)\n";
    expect(pooled <= unpooled, "mean pooled duration <= mean unpooled duration");
    return expect.ok();
}

bool performance_montecarlo() {
    Expect expect("perf-montecarlo");
    harness::ExperimentConfig cfg;
    cfg.benchmark = harness::Benchmark::montecarlo;
    cfg.modes = {harness::Mode::fresh, harness::Mode::cached};
    cfg.threads = {logical_processors()};
    cfg.workloads = {1000000};
    cfg.dims = {1000};
    cfg.repeats = 1;
    const auto report = harness::run_experiment(cfg);
    harness::emit_csv(report, "acceptance_perf_montecarlo.csv");
    std::cout << harness::summarize(report);
    const auto cells = harness::summarize_cells(report);
    if (!expect(cells.size() == 1 && cells[0].ratio.has_value(), "fresh/cached ratio emitted")) {
        return false;
    }
    std::cout << std::fixed << std::setprecision(3) << "    fresh/cached = " << *cells[0].ratio
              << " (reference ratio 202/130 = 1.55; report only)\n";
    return expect.ok();
}

// ---------------------------------------------------------------------------
// 6. Determinism gate and CSV round trip

bool csv_round_trip(const harness::BenchReport& report, const std::string& path, Expect& expect) {
    harness::emit_csv(report, path);
    const auto file = tlpool::testing::read_csv_file(path);
    std::filesystem::remove(path);
    if (!expect(file.records.size() == report.rows.size(), "CSV row count")) {
        return false;
    }
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        const auto& rec = file.records[i];
        const bool same = rec.benchmark == harness::to_string(row.benchmark) &&
                          rec.mode == harness::to_string(row.mode) && rec.threads == row.threads &&
                          rec.workload == row.workload && rec.dim == row.dim && rec.repetition == row.repetition &&
                          rec.duration_ms == row.duration_ms && rec.peak_mem_bytes == row.peak_mem_bytes &&
                          same_bits(rec.checksum, row.checksum);
        expect(same, "CSV row " + std::to_string(i) + " differs after round trip");
    }
    return expect.ok();
}

bool ten_identical(const harness::BenchReport& report, Expect& expect) {
    const auto cells = harness::summarize_cells(report);
    for (const auto& cell : cells) {
        for (const auto& mode : cell.modes) {
            std::vector<double> sums;
            for (const auto& r : report.rows) {
                if (r.mode == mode.mode && r.threads == cell.threads && r.workload == cell.workload &&
                    r.dim == cell.dim) {
                    sums.push_back(r.checksum);
                }
            }
            bool identical = sums.size() == 10;
            for (double s : sums) identical = identical && same_bits(s, sums.front());
            expect(identical, std::string(harness::to_string(mode.mode)) + ": 10 identical checksums");
        }
    }
    return expect.ok();
}

bool determinism_pairs_child() {
    Expect expect("determinism-pairs");
    harness::ExperimentConfig cfg;
    cfg.benchmark = harness::Benchmark::pairs;
    cfg.modes = {harness::Mode::unpooled, harness::Mode::pooled};
    cfg.threads = {3};
    cfg.workloads = {100000};
    cfg.ring_size = 7;
    cfg.pool_size = 100;
    cfg.repeats = 10;
    set_pool_size(100);
    const auto report = harness::run_experiment(cfg);
    ten_identical(report, expect);
    csv_round_trip(report, "acceptance_determinism_pairs.csv", expect);
    return expect.ok();
}

bool determinism_montecarlo() {
    Expect expect("determinism-montecarlo");
    harness::ExperimentConfig cfg;
    cfg.benchmark = harness::Benchmark::montecarlo;
    cfg.modes = {harness::Mode::fresh, harness::Mode::cached};
    cfg.threads = {4};
    cfg.workloads = {20000};
    cfg.dims = {10};
    cfg.seed = 42;
    cfg.repeats = 10;
    const auto report = harness::run_experiment(cfg);
    ten_identical(report, expect);
    csv_round_trip(report, "acceptance_determinism_montecarlo.csv", expect);
    return expect.ok();
}

// ---------------------------------------------------------------------------

struct Criterion {
    std::string id;
    std::string title;
    double time_limit_s;  // <= 0: no limit
    std::function<bool()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "pool invariant suite", 5.0, [] { return tlpool::testing::run_isolated(pool_invariants_child); }},
        {"AC2", "monte-carlo fresh/cached equivalence", 30.0, montecarlo_equivalence},
        {"AC3", "rastrigin oracle", 0.0, rastrigin_oracle},
        {"AC4", "pairs checksum oracle", 30.0,
         [] {
             bool ok = true;
             for (std::size_t pool_size : {1u, 100u, 100000u}) {
                 ok = tlpool::testing::run_isolated([=] { return pairs_oracle_child(pool_size); }) && ok;
             }
             return ok;
         }},
        {"AC5", "desk-scale performance report", 0.0,
         [] {
             const bool pairs = tlpool::testing::run_isolated(performance_pairs_child);
             const bool mc = performance_montecarlo();
             return pairs && mc;
         }},
        {"AC6", "determinism gate and CSV round trip", 0.0,
         [] {
             const bool pairs = tlpool::testing::run_isolated(determinism_pairs_child);
             const bool mc = determinism_montecarlo();
             return pairs && mc;
         }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        std::cout << c.id << ": " << c.title << '\n' << std::flush;
        const auto start = Clock::now();
        bool ok = false;
        try {
            ok = c.run();
        } catch (const std::exception& e) {
            std::cout << "    exception: " << e.what() << '\n';
        }
        const double elapsed = seconds_since(start);
        if (c.time_limit_s > 0.0 && elapsed >= c.time_limit_s) {
            std::cout << "    exceeded time limit of " << c.time_limit_s << " s\n";
            ok = false;
        }
        std::ostringstream line;
        line << (ok ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << std::fixed << std::setprecision(2)
             << elapsed << " s)";
        std::cout << line.str() << '\n' << std::flush;
        failed += ok ? 0 : 1;
    }
    std::cout << (failed == 0 ? "all acceptance criteria passed" : std::to_string(failed) + " criteria failed")
              << '\n';
    return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
