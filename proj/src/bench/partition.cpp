#include "tlpool/bench/partition.hpp"

#include <stdexcept>
#include <string>

namespace tlpool::bench {

std::vector<WorkShare> partition_work(std::uint64_t total, std::uint32_t workers) {
    if (workers < 1) {
        throw std::invalid_argument("need at least one worker");
    }
    if (total < workers) {
        throw std::invalid_argument("work size " + std::to_string(total) + " is smaller than worker count " +
                                    std::to_string(workers));
    }
    const std::uint64_t per_worker = total / workers;
    std::vector<WorkShare> shares;
    shares.reserve(workers);
    std::uint64_t offset = 0;
    for (std::uint32_t i = 0; i + 1 < workers; ++i) {
        shares.push_back({offset, per_worker});
        offset += per_worker;
    }
    shares.push_back({offset, total - offset});
    return shares;
}

} // namespace tlpool::bench
