#include "tlpool/bench/memory.hpp"

#include <sys/resource.h>

#include <atomic>
#include <fstream>
#include <iostream>
#include <string>

namespace tlpool::bench {

bool reset_peak_rss() {
    // Writing "5" to clear_refs resets VmHWM (Linux >= 4.0).
    std::ofstream out("/proc/self/clear_refs");
    if (!out) {
        return false;
    }
    out << "5";
    out.flush();
    return static_cast<bool>(out);
}

std::optional<std::uint64_t> peak_rss_bytes() {
    std::ifstream status("/proc/self/status");
    std::string line;
    while (std::getline(status, line)) {
        if (line.rfind("VmHWM:", 0) == 0) {
            try {
                return std::stoull(line.substr(6)) * 1024;
            } catch (const std::exception&) {
                break;
            }
        }
    }
    rusage usage{};
    if (getrusage(RUSAGE_SELF, &usage) == 0 && usage.ru_maxrss > 0) {
        return static_cast<std::uint64_t>(usage.ru_maxrss) * 1024;
    }
    return std::nullopt;
}

std::uint64_t peak_rss_bytes_or_zero() {
    if (auto bytes = peak_rss_bytes()) {
        return *bytes;
    }
    static std::atomic<bool> warned{false};
    if (!warned.exchange(true)) {
        std::cerr << "warning: peak memory not available on this platform, reporting 0\n";
    }
    return 0;
}

} // namespace tlpool::bench
