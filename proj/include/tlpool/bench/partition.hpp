#pragma once

#include <cstdint>
#include <vector>

namespace tlpool::bench {

struct WorkShare {
    std::uint64_t offset;
    std::uint64_t count;
};

/// Splits `total` units over `workers`: the first workers-1 get total/workers
/// each, the last one takes whatever remains. Requires total >= workers >= 1.
std::vector<WorkShare> partition_work(std::uint64_t total, std::uint32_t workers);

} // namespace tlpool::bench
