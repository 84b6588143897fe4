#pragma once

#include <array>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>

#include "tlpool/errors.hpp"
#include "tlpool/pool.hpp"

namespace tlpool {

/// Default capacity of every pool created before set_pool_size() is called.
inline constexpr std::size_t kDefaultPoolSize = 100000;

/**
 * A factory for a poolable type. Besides the members checked here it must
 * provide `make_unmanaged(args...)` and `make_managed(pool, args...)`, both
 * returning `std::unique_ptr<item_type>`; the payload arguments given to
 * acquire() are forwarded to them.
 *
 * type_id() must be stable for the process lifetime and distinct per pooled
 * type; it selects the slot in each thread's pool array.
 */
template <typename F>
concept PoolFactory = requires(const F& f) {
    typename F::item_type;
    requires std::derived_from<typename F::item_type, Poolable<typename F::item_type>>;
    { f.type_id() } -> std::convertible_to<int>;
};

template <PoolFactory F>
using item_t = typename F::item_type;

/// Sets the capacity of pools created from now on. Throws std::invalid_argument
/// for n < 1 and StateError once any thread has created its pool array.
void set_pool_size(std::int64_t n);
[[nodiscard]] std::size_t get_pool_size();
[[nodiscard]] bool pool_size_reset_allowed();

namespace detail {

struct ThreadPools {
    std::array<std::unique_ptr<PoolBase>, kMaxPooledTypes> slots;
};

inline thread_local std::unique_ptr<ThreadPools> thread_pools;

// Creates the calling thread's pool array and closes the pool-size gate.
ThreadPools& create_thread_pools();

std::size_t pool_size_for_new_pool();

[[noreturn]] void throw_bad_type_id(int id);
[[noreturn]] void throw_type_id_collision(int id);

inline int checked_type_id(int id) {
    if (id < 0 || id >= kMaxPooledTypes) {
        throw_bad_type_id(id);
    }
    return id;
}

template <typename Factory>
ThreadLocalPool<item_t<Factory>>& cast_pool(PoolBase& base, int id) {
    if (base.factory_token() != &factory_tag<Factory>) {
        throw_type_id_collision(id);
    }
    return static_cast<ThreadLocalPool<item_t<Factory>>&>(base);
}

} // namespace detail

/**
 * Returns the calling thread's pool for the factory's type, creating the
 * thread's pool array and the pool itself (fully pre-filled) on first use.
 * After that a lookup is one array index.
 */
template <PoolFactory F, typename... Args>
ThreadLocalPool<item_t<F>>& get_thread_local_pool(const F& factory, const Args&... args) {
    const int id = detail::checked_type_id(factory.type_id());
    detail::ThreadPools* pools = detail::thread_pools.get();
    if (pools == nullptr) {
        pools = &detail::create_thread_pools();
    }
    std::unique_ptr<PoolBase>& slot = pools->slots[static_cast<std::size_t>(id)];
    if (!slot) {
        slot = std::make_unique<ThreadLocalPool<item_t<F>>>(detail::pool_size_for_new_pool(), factory, args...);
    }
    return detail::cast_pool<F>(*slot, id);
}

/// Lookup only: the pool must already exist on this thread, otherwise StateError.
template <PoolFactory F>
ThreadLocalPool<item_t<F>>& find_thread_local_pool(const F& factory) {
    const int id = detail::checked_type_id(factory.type_id());
    detail::ThreadPools* pools = detail::thread_pools.get();
    if (pools == nullptr || !pools->slots[static_cast<std::size_t>(id)]) {
        throw StateError("no thread-local pool for type-id " + std::to_string(id) + " on this thread");
    }
    return detail::cast_pool<F>(*pools->slots[static_cast<std::size_t>(id)], id);
}

/// True if the calling thread already has a pool in the factory's slot.
template <PoolFactory F>
[[nodiscard]] bool has_thread_local_pool(const F& factory) {
    const int id = detail::checked_type_id(factory.type_id());
    const detail::ThreadPools* pools = detail::thread_pools.get();
    return pools != nullptr && pools->slots[static_cast<std::size_t>(id)] != nullptr;
}

/// Drops the calling thread's pool for this type. Handles to its managed items become dangling.
template <PoolFactory F>
void delete_thread_local_pool(const F& factory) {
    const int id = detail::checked_type_id(factory.type_id());
    if (detail::ThreadPools* pools = detail::thread_pools.get()) {
        pools->slots[static_cast<std::size_t>(id)].reset();
    }
}

/**
 * Takes an item from the calling thread's pool, or makes an unmanaged one when
 * the pool is exhausted. Non-empty `args` are then passed to the item's
 * set_data(); with no args the payload is left as it was.
 */
template <PoolFactory F, typename... Args>
Pooled<item_t<F>> acquire(const F& factory, const Args&... args) {
    ThreadLocalPool<item_t<F>>& pool = get_thread_local_pool(factory, args...);
    Pooled<item_t<F>> handle = [&] {
        if (item_t<F>* item = pool.try_acquire()) {
            return Pooled<item_t<F>>(item);
        }
        return Pooled<item_t<F>>(factory.make_unmanaged(args...));
    }();
    if constexpr (sizeof...(Args) > 0) {
        handle->set_data(args...);
    }
    return handle;
}

} // namespace tlpool
