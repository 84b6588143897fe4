#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tlpool::bench {

/// 10n + sum(x_i^2 - 10 cos(2 pi x_i)). Global minimum 0 at the origin.
/// Throws std::invalid_argument for an empty point.
double rastrigin(std::span<const double> x);

inline constexpr double kRastriginLow = -5.12;
inline constexpr double kRastriginHigh = 5.12;

class BoxBounds {
public:
    /// Throws std::invalid_argument on empty or mismatched vectors, or low[i] > high[i].
    BoxBounds(std::vector<double> low, std::vector<double> high);

    static BoxBounds uniform(std::size_t dim, double low = kRastriginLow, double high = kRastriginHigh);

    [[nodiscard]] std::size_t dimension() const noexcept { return low_.size(); }
    [[nodiscard]] std::span<const double> low() const noexcept { return low_; }
    [[nodiscard]] std::span<const double> high() const noexcept { return high_; }

private:
    std::vector<double> low_;
    std::vector<double> high_;
};

using Rng = std::mt19937_64;

/// Independent, reproducible stream for one worker of a seeded run.
Rng make_worker_rng(std::uint64_t seed, std::uint64_t worker_index);

/// Uniform in [0, 1) from the top 53 bits of one draw.
inline double unit_uniform(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace detail {

inline void fill_uniform(std::span<double> x, const BoxBounds& bounds, Rng& rng) {
    const auto low = bounds.low();
    const auto high = bounds.high();
    for (std::size_t i = 0; i < x.size(); ++i) {
        x[i] = low[i] + (high[i] - low[i]) * unit_uniform(rng);
    }
}

} // namespace detail

/// Allocates a new zero-initialised vector on every call.
class FreshVectorGenerator {
public:
    std::vector<double> next(const BoxBounds& bounds, Rng& rng) const {
        std::vector<double> x(bounds.dimension());
        detail::fill_uniform(x, bounds, rng);
        return x;
    }
};

/// Keeps one member vector and overwrites it; reallocates only when the dimension changes.
class CachedVectorGenerator {
public:
    const std::vector<double>& next(const BoxBounds& bounds, Rng& rng) {
        if (cache_.size() != bounds.dimension()) {
            cache_ = std::vector<double>(bounds.dimension());
        }
        detail::fill_uniform(cache_, bounds, rng);
        return cache_;
    }

private:
    std::vector<double> cache_;
};

enum class GeneratorMode { fresh, cached };

struct Incumbent {
    std::vector<double> point;
    double value;
};

struct MonteCarloConfig {
    BoxBounds bounds = BoxBounds::uniform(1);
    std::uint64_t total_evals = 1;
    std::uint32_t threads = 1;
    std::uint64_t seed = 0;
    GeneratorMode mode = GeneratorMode::cached;
};

struct MonteCarloResult {
    Incumbent best;
    std::vector<Incumbent> worker_best;
    std::vector<std::uint64_t> worker_evals;
    std::chrono::nanoseconds elapsed{};
};

/// Index of the lowest value; the lowest index wins ties. Requires a non-empty span.
std::size_t best_incumbent_index(std::span<const Incumbent> incumbents);

/**
 * Parallel pure random search over the box. Evaluations are split with
 * partition_work(); each worker has its own generator and RNG stream and keeps
 * a local incumbent. After all workers join, the lowest local value wins, ties
 * going to the lowest worker index. `elapsed` covers spawn to join.
 */
MonteCarloResult monte_carlo_optimize(const MonteCarloConfig& config);

} // namespace tlpool::bench
