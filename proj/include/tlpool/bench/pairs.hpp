#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "tlpool/pool.hpp"

namespace tlpool::bench {

/// (item id, value) holder used by the allocation stress test.
class PairItem final : public Poolable<PairItem> {
public:
    PairItem() noexcept = default;
    explicit PairItem(ThreadLocalPool<PairItem>* pool) noexcept : Poolable(pool) {}

    void set_data(std::int64_t id, double value) noexcept {
        id_ = id;
        value_ = value;
    }

    [[nodiscard]] std::int64_t item_id() const noexcept { return id_; }
    [[nodiscard]] double value() const noexcept { return value_; }

private:
    std::int64_t id_ = 0;
    double value_ = 0.0;
};

struct PairFactory {
    using item_type = PairItem;
    static constexpr int kTypeId = 0;

    [[nodiscard]] int type_id() const noexcept { return kTypeId; }

    std::unique_ptr<PairItem> make_unmanaged(const auto&...) const { return std::make_unique<PairItem>(); }

    std::unique_ptr<PairItem> make_managed(ThreadLocalPool<PairItem>& pool, const auto&...) const {
        return std::make_unique<PairItem>(&pool);
    }
};

enum class PairsMode { unpooled, pooled };

/// `double` keeps every value 2i exact; `single` rounds 2i through float first.
enum class ValuePrecision { double_precision, single_precision };

/// The value stored for object i.
inline double pair_value(std::int64_t i, ValuePrecision precision) noexcept {
    if (precision == ValuePrecision::single_precision) {
        return static_cast<double>(2.0f * static_cast<float>(i));
    }
    return 2.0 * static_cast<double>(i);
}

/**
 * Creates `count` pair objects with ids offset..offset+count-1, sums their
 * values and keeps the last `ring_size` alive in a ring buffer.
 *
 * Unpooled: every object is heap-allocated and dropped when its ring slot is
 * overwritten. Pooled: objects come from the calling thread's pool; when the
 * ring fills, all of its items are released before the index wraps. Items still
 * in the ring at the end are released too, so the pool is whole on return.
 */
double run_pairs_worker(std::uint64_t offset, std::uint64_t count, std::size_t ring_size, PairsMode mode,
                        ValuePrecision precision = ValuePrecision::double_precision);

struct PairWorkload {
    std::uint64_t total_objects = 0;
    std::uint32_t threads = 1;
    std::size_t ring_size = 10000;
    PairsMode mode = PairsMode::unpooled;
    /// Capacity for pooled runs. Applied with set_pool_size() if it differs from
    /// the current setting, which fails once any pool exists.
    std::size_t pool_size = 100000;
    ValuePrecision precision = ValuePrecision::double_precision;
};

struct PairsResult {
    double total_value = 0.0;
    std::vector<double> worker_sums;
    std::chrono::nanoseconds elapsed{};
    std::uint64_t peak_mem_bytes = 0;
};

/// Runs one worker thread per partition share and adds up their sums. Timing
/// covers spawn to join. A failing worker makes the whole run throw.
PairsResult run_pairs_benchmark(const PairWorkload& workload);

/// N(N-1), the exact total for double-precision values.
double expected_pairs_sum(std::uint64_t total_objects);

} // namespace tlpool::bench
