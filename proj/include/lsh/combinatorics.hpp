#pragma once

#include <cstdint>
#include <string>

#include "lsh/errors.hpp"

namespace lsh {

/// Binomial coefficient C(n, k) in overflow-checked 128-bit arithmetic.
/// Throws NumericError if the result exceeds 2^63 - 1; this bounds the
/// supported (N, K) range for count-based likelihoods.
inline std::int64_t binomial(int n, int k) {
    if (n < 0 || k < 0) throw ConfigError("binomial: negative argument");
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    constexpr unsigned __int128 limit = static_cast<unsigned __int128>(INT64_MAX);
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i);
        acc /= static_cast<unsigned>(i);
        if (acc > limit)
            throw NumericError("binomial(" + std::to_string(n) + "," + std::to_string(k) +
                               ") overflows 63-bit counts");
    }
    return static_cast<std::int64_t>(acc);
}

} // namespace lsh
