#pragma once

#include <stdexcept>

namespace tlpool {

class PoolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad type-id, or two factory types claiming the same registry slot.
class ConfigurationError : public PoolError {
public:
    using PoolError::PoolError;
};

/// Releasing a managed item that is not currently in use.
class LifecycleError : public PoolError {
public:
    using PoolError::PoolError;
};

/// Releasing a managed item from a thread other than the one owning its pool.
class OwnershipError : public PoolError {
public:
    using PoolError::PoolError;
};

/// Changing the pool size after a pool has been created anywhere in the process,
/// or looking up a pool that does not exist.
class StateError : public PoolError {
public:
    using PoolError::PoolError;
};

} // namespace tlpool
