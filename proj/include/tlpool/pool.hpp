#pragma once

#include <cassert>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "tlpool/errors.hpp"

#ifndef TLPOOL_MAX_POOLED_TYPES
#define TLPOOL_MAX_POOLED_TYPES 10
#endif

namespace tlpool {

/// Number of registry slots per thread. Factory type-ids must lie in [0, kMaxPooledTypes).
inline constexpr int kMaxPooledTypes = TLPOOL_MAX_POOLED_TYPES;
static_assert(kMaxPooledTypes > 0);

template <typename T>
class ThreadLocalPool;

/**
 * Base class for objects that can live in a ThreadLocalPool.
 *
 * Derive as `class X : public Poolable<X>` and provide a constructor taking a
 * `ThreadLocalPool<X>*` (managed) plus one that passes nullptr (unmanaged).
 * A managed item is either on its pool's free stack or held by client code,
 * never both; an unmanaged item has no pool and release() does nothing.
 */
template <typename T>
class Poolable {
public:
    Poolable(const Poolable&) = delete;
    Poolable& operator=(const Poolable&) = delete;

    /// Hands a managed item back to its pool. Must be called on the pool's
    /// owning thread. No-op for unmanaged items.
    void release();

    [[nodiscard]] bool is_managed() const noexcept { return pool_ != nullptr; }
    [[nodiscard]] bool in_use() const noexcept { return in_use_; }
    [[nodiscard]] const ThreadLocalPool<T>* owner_pool() const noexcept { return pool_; }

protected:
    explicit Poolable(ThreadLocalPool<T>* pool = nullptr) noexcept : pool_(pool) {}
    ~Poolable() = default;

private:
    friend class ThreadLocalPool<T>;

    ThreadLocalPool<T>* pool_;
    bool in_use_ = false;
};

namespace detail {

// One distinct address per factory type, compared by pointer in the registry.
template <typename Factory>
inline constexpr char factory_tag = 0;

} // namespace detail

/// Type-erased pool, so a thread's registry can hold pools of different item types.
class PoolBase {
public:
    PoolBase(const PoolBase&) = delete;
    PoolBase& operator=(const PoolBase&) = delete;
    virtual ~PoolBase() = default;

    /// Identity of the factory type that filled this pool.
    [[nodiscard]] const void* factory_token() const noexcept { return factory_token_; }
    [[nodiscard]] std::thread::id owner_thread() const noexcept { return owner_; }

protected:
    explicit PoolBase(const void* factory_token)
        : factory_token_(factory_token), owner_(std::this_thread::get_id()) {}

private:
    const void* factory_token_;
    std::thread::id owner_;
};

/**
 * Fixed-capacity LIFO stack of available items, confined to the thread that
 * constructed it. All `capacity` managed items are created up front; the pool
 * never grows or shrinks and never takes a lock.
 */
template <typename T>
class ThreadLocalPool final : public PoolBase {
public:
    using item_type = T;

    template <typename Factory, typename... Args>
    ThreadLocalPool(std::size_t capacity, const Factory& factory, const Args&... args)
        : PoolBase(&detail::factory_tag<Factory>), slots_(capacity, nullptr) {
        if (capacity == 0) {
            throw std::invalid_argument("pool capacity must be at least 1");
        }
        items_.reserve(capacity);
        for (std::size_t i = 0; i < capacity; ++i) {
            std::unique_ptr<T> item = factory.make_managed(*this, args...);
            if (!item || item->pool_ != this) {
                throw ConfigurationError("factory make_managed did not bind the item to the requesting pool");
            }
            slots_[i] = item.get();
            items_.push_back(std::move(item));
        }
        top_avail_ = static_cast<std::ptrdiff_t>(capacity) - 1;
    }

    /// Pops the most recently released item, or returns nullptr when the stack is empty.
    [[nodiscard]] T* try_acquire() noexcept {
        if (top_avail_ < 0) {
            return nullptr;
        }
        T* item = slots_[static_cast<std::size_t>(top_avail_)];
        slots_[static_cast<std::size_t>(top_avail_)] = nullptr;
        --top_avail_;
        item->in_use_ = true;
        return item;
    }

    [[nodiscard]] std::size_t capacity() const noexcept { return slots_.size(); }
    [[nodiscard]] std::size_t available() const noexcept { return static_cast<std::size_t>(top_avail_ + 1); }
    [[nodiscard]] std::size_t outstanding() const noexcept { return capacity() - available(); }
    [[nodiscard]] std::ptrdiff_t top_available_index() const noexcept { return top_avail_; }

    /// Slot contents, for inspection. Entries above top_available_index() are null.
    [[nodiscard]] const T* slot(std::size_t index) const { return slots_.at(index); }

private:
    friend class Poolable<T>;

    void push(T* item) noexcept {
        assert(top_avail_ + 1 < static_cast<std::ptrdiff_t>(slots_.size()));
        slots_[static_cast<std::size_t>(++top_avail_)] = item;
    }

    std::vector<std::unique_ptr<T>> items_;  // owns every managed item
    std::vector<T*> slots_;
    std::ptrdiff_t top_avail_ = -1;
};

template <typename T>
void Poolable<T>::release() {
    if (pool_ == nullptr) {
        return;
    }
    if (pool_->owner_thread() != std::this_thread::get_id()) {
        throw OwnershipError("Object released from a thread that does not own its pool");
    }
    if (!in_use_) {
        throw LifecycleError("Object not currently used");
    }
    in_use_ = false;
    pool_->push(static_cast<T*>(this));
}

/**
 * Move-only handle returned by acquire().
 *
 * Owns unmanaged items and deletes them when it goes away. Managed items stay
 * owned by their pool; dropping the handle does not release them, call
 * `handle->release()` for that. A handle must not outlive the pool of the
 * managed item it refers to.
 */
template <typename T>
class Pooled {
public:
    Pooled() noexcept = default;
    explicit Pooled(T* managed) noexcept : item_(managed) {}
    explicit Pooled(std::unique_ptr<T> unmanaged) noexcept : item_(unmanaged.release()) {}

    Pooled(Pooled&& other) noexcept : item_(std::exchange(other.item_, nullptr)) {}
    Pooled& operator=(Pooled&& other) noexcept {
        if (this != &other) {
            reset();
            item_ = std::exchange(other.item_, nullptr);
        }
        return *this;
    }
    Pooled(const Pooled&) = delete;
    Pooled& operator=(const Pooled&) = delete;

    ~Pooled() { reset(); }

    void reset() noexcept {
        if (item_ != nullptr && !item_->is_managed()) {
            delete item_;
        }
        item_ = nullptr;
    }

    [[nodiscard]] T* get() const noexcept { return item_; }
    T* operator->() const noexcept { return item_; }
    T& operator*() const noexcept { return *item_; }
    explicit operator bool() const noexcept { return item_ != nullptr; }

private:
    T* item_ = nullptr;
};

} // namespace tlpool
