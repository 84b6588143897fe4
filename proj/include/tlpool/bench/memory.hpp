#pragma once

#include <cstdint>
#include <optional>

namespace tlpool::bench {

/// Resets the kernel's resident-set high-water mark for this process.
/// Returns false where that is not supported.
bool reset_peak_rss();

/// Peak resident set size in bytes since process start or the last successful reset.
std::optional<std::uint64_t> peak_rss_bytes();

/// peak_rss_bytes(), or 0 with a one-time warning on stderr when unavailable.
std::uint64_t peak_rss_bytes_or_zero();

} // namespace tlpool::bench
