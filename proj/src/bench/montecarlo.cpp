#include "tlpool/bench/montecarlo.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "tlpool/bench/partition.hpp"

namespace tlpool::bench {

double rastrigin(std::span<const double> x) {
    if (x.empty()) {
        throw std::invalid_argument("rastrigin: empty point");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double sum = 10.0 * static_cast<double>(x.size());
    for (double xi : x) {
        sum += xi * xi - 10.0 * std::cos(two_pi * xi);
    }
    return sum;
}

BoxBounds::BoxBounds(std::vector<double> low, std::vector<double> high)
    : low_(std::move(low)), high_(std::move(high)) {
    if (low_.empty()) {
        throw std::invalid_argument("box bounds need dimension >= 1");
    }
    if (low_.size() != high_.size()) {
        throw std::invalid_argument("box bounds: low and high differ in length");
    }
    for (std::size_t i = 0; i < low_.size(); ++i) {
        if (!(low_[i] <= high_[i])) {
            throw std::invalid_argument("box bounds: low > high at coordinate " + std::to_string(i));
        }
    }
}

BoxBounds BoxBounds::uniform(std::size_t dim, double low, double high) {
    return BoxBounds(std::vector<double>(dim, low), std::vector<double>(dim, high));
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

template <typename Generator>
Incumbent search(const BoxBounds& bounds, std::uint64_t evals, Rng rng) {
    Generator generator;
    Incumbent local{{}, std::numeric_limits<double>::infinity()};
    for (std::uint64_t i = 0; i < evals; ++i) {
        auto&& x = generator.next(bounds, rng);
        const double y = rastrigin(x);
        if (y < local.value) {
            local.point.assign(x.begin(), x.end());
            local.value = y;
        }
    }
    return local;
}

} // namespace

Rng make_worker_rng(std::uint64_t seed, std::uint64_t worker_index) {
    return Rng(splitmix64(splitmix64(seed) ^ worker_index));
}

std::size_t best_incumbent_index(std::span<const Incumbent> incumbents) {
    if (incumbents.empty()) {
        throw std::invalid_argument("no incumbents to merge");
    }
    std::size_t best = 0;
    for (std::size_t w = 1; w < incumbents.size(); ++w) {
        if (incumbents[w].value < incumbents[best].value) {
            best = w;
        }
    }
    return best;
}

MonteCarloResult monte_carlo_optimize(const MonteCarloConfig& config) {
    if (config.threads < 1) {
        throw std::invalid_argument("monte carlo: threads must be >= 1");
    }
    if (config.total_evals < config.threads) {
        throw std::invalid_argument("monte carlo: total_evals must be >= threads");
    }
    const auto shares = partition_work(config.total_evals, config.threads);

    MonteCarloResult result;
    result.worker_best.resize(shares.size());
    result.worker_evals.reserve(shares.size());
    for (const auto& share : shares) {
        result.worker_evals.push_back(share.count);
    }
    std::vector<std::exception_ptr> failures(shares.size());

    const auto start = std::chrono::steady_clock::now();
    {
        std::vector<std::jthread> workers;
        workers.reserve(shares.size());
        for (std::size_t w = 0; w < shares.size(); ++w) {
            workers.emplace_back([&, w] {
                try {
                    Rng rng = make_worker_rng(config.seed, w);
                    result.worker_best[w] = config.mode == GeneratorMode::fresh
                                                ? search<FreshVectorGenerator>(config.bounds, shares[w].count, rng)
                                                : search<CachedVectorGenerator>(config.bounds, shares[w].count, rng);
                } catch (...) {
                    failures[w] = std::current_exception();
                }
            });
        }
    }
    result.elapsed = std::chrono::steady_clock::now() - start;

    for (const auto& failure : failures) {
        if (failure) {
            std::rethrow_exception(failure);
        }
    }
    result.best = result.worker_best[best_incumbent_index(result.worker_best)];
    return result;
}

} // namespace tlpool::bench
