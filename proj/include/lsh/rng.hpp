#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace lsh {

namespace detail {

inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

} // namespace detail

/// Seeded random stream. All randomness flows from one root seed split into
/// named substreams, so enabling one feature does not perturb another's draws.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed) : engine_(seed) {}

    /// Substream derived from a root seed and a stream name.
    static RngStream named(std::uint64_t root_seed, std::string_view name) {
        return RngStream(detail::splitmix64(root_seed ^ detail::fnv1a64(name)));
    }

    RngStream derive(std::string_view name) {
        return RngStream(detail::splitmix64(engine_() ^ detail::fnv1a64(name)));
    }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    /// Uniform integer on [lo, hi] inclusive.
    long uniform_int(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(engine_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    double normal(double mean, double sd) {
        return std::normal_distribution<double>(mean, sd)(engine_);
    }
    double gamma(double shape, double scale) {
        return std::gamma_distribution<double>(shape, scale)(engine_);
    }
    double chi_squared(double dof) {
        return std::chi_squared_distribution<double>(dof)(engine_);
    }
    long binomial(long n, double p) {
        if (n <= 0 || p <= 0.0) return 0;
        if (p >= 1.0) return n;
        return std::binomial_distribution<long>(n, p)(engine_);
    }
    long poisson(double rate) {
        if (rate <= 0.0) return 0;
        return std::poisson_distribution<long>(rate)(engine_);
    }
    bool bernoulli(double p) { return uniform() < p; }

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace lsh
