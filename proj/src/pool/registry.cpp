#include "tlpool/registry.hpp"

#include <mutex>

namespace tlpool {
namespace {

std::mutex config_mutex;
std::size_t pool_size = kDefaultPoolSize;
bool size_reset_allowed = true;

} // namespace

void set_pool_size(std::int64_t n) {
    if (n < 1) {
        throw std::invalid_argument("pool size must be at least 1, got " + std::to_string(n));
    }
    std::lock_guard lock(config_mutex);
    if (!size_reset_allowed) {
        throw StateError("pool size cannot be changed after a thread-local pool has been created");
    }
    pool_size = static_cast<std::size_t>(n);
}

std::size_t get_pool_size() {
    std::lock_guard lock(config_mutex);
    return pool_size;
}

bool pool_size_reset_allowed() {
    std::lock_guard lock(config_mutex);
    return size_reset_allowed;
}

namespace detail {

ThreadPools& create_thread_pools() {
    {
        std::lock_guard lock(config_mutex);
        size_reset_allowed = false;
    }
    thread_pools = std::make_unique<ThreadPools>();
    return *thread_pools;
}

std::size_t pool_size_for_new_pool() {
    return get_pool_size();
}

void throw_bad_type_id(int id) {
    throw ConfigurationError("factory type-id " + std::to_string(id) + " outside [0, " +
                             std::to_string(kMaxPooledTypes) + ")");
}

void throw_type_id_collision(int id) {
    throw ConfigurationError("type-id " + std::to_string(id) +
                             " is already used by a pool created from a different factory type");
}

} // namespace detail
} // namespace tlpool
