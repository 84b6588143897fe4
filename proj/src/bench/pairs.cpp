#include "tlpool/bench/pairs.hpp"

#include <exception>
#include <stdexcept>
#include <string>
#include <thread>

#include "tlpool/bench/memory.hpp"
#include "tlpool/bench/partition.hpp"
#include "tlpool/registry.hpp"

namespace tlpool::bench {
namespace {

double unpooled_worker(std::uint64_t offset, std::uint64_t count, std::size_t ring_size, ValuePrecision precision) {
    std::vector<std::unique_ptr<PairItem>> ring(ring_size);
    double sum = 0.0;
    std::size_t ind = 0;
    const std::uint64_t up_to = offset + count;
    for (std::uint64_t i = offset; i < up_to; ++i) {
        auto item = std::make_unique<PairItem>();
        item->set_data(static_cast<std::int64_t>(i), pair_value(static_cast<std::int64_t>(i), precision));
        sum += item->value();
        ring[ind++] = std::move(item);
        if (ind == ring_size) {
            ind = 0;
        }
    }
    return sum;
}

double pooled_worker(std::uint64_t offset, std::uint64_t count, std::size_t ring_size, ValuePrecision precision) {
    const PairFactory factory;
    std::vector<Pooled<PairItem>> ring(ring_size);
    double sum = 0.0;
    std::size_t ind = 0;
    const std::uint64_t up_to = offset + count;
    for (std::uint64_t i = offset; i < up_to; ++i) {
        const auto id = static_cast<std::int64_t>(i);
        Pooled<PairItem> item = acquire(factory, id, pair_value(id, precision));
        sum += item->value();
        ring[ind++] = std::move(item);
        if (ind == ring_size) {
            for (auto& held : ring) {
                held->release();
            }
            ind = 0;
        }
    }
    for (std::size_t j = 0; j < ind; ++j) {
        ring[j]->release();
    }
    return sum;
}

} // namespace

double run_pairs_worker(std::uint64_t offset, std::uint64_t count, std::size_t ring_size, PairsMode mode,
                        ValuePrecision precision) {
    if (ring_size < 1) {
        throw std::invalid_argument("ring size must be at least 1");
    }
    return mode == PairsMode::pooled ? pooled_worker(offset, count, ring_size, precision)
                                     : unpooled_worker(offset, count, ring_size, precision);
}

PairsResult run_pairs_benchmark(const PairWorkload& workload) {
    if (workload.ring_size < 1) {
        throw std::invalid_argument("ring size must be at least 1");
    }
    if (workload.mode == PairsMode::pooled && workload.pool_size != get_pool_size()) {
        set_pool_size(static_cast<std::int64_t>(workload.pool_size));
    }
    const auto shares = partition_work(workload.total_objects, workload.threads);

    PairsResult result;
    result.worker_sums.assign(shares.size(), 0.0);
    std::vector<std::exception_ptr> failures(shares.size());

    reset_peak_rss();
    const auto start = std::chrono::steady_clock::now();
    {
        std::vector<std::jthread> workers;
        workers.reserve(shares.size());
        for (std::size_t w = 0; w < shares.size(); ++w) {
            workers.emplace_back([&, w] {
                try {
                    result.worker_sums[w] = run_pairs_worker(shares[w].offset, shares[w].count, workload.ring_size,
                                                             workload.mode, workload.precision);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    result.elapsed = std::chrono::steady_clock::now() - start;
    result.peak_mem_bytes = peak_rss_bytes_or_zero();

    for (std::size_t w = 0; w < failures.size(); ++w) {
        if (failures[w]) {
            try {
                std::rethrow_exception(failures[w]);
            } catch (const std::exception& e) {
                throw std::runtime_error("pairs worker " + std::to_string(w) + " failed: " + e.what());
            }
        }
    }
    for (double s : result.worker_sums) {
        result.total_value += s;
    }
    return result;
}

double expected_pairs_sum(std::uint64_t total_objects) {
    const auto n = static_cast<long double>(total_objects);
    return static_cast<double>(total_objects == 0 ? 0.0L : n * (n - 1.0L));
}

} // namespace tlpool::bench
