#include "lsh/likelihood.hpp"

#include <cmath>
#include <limits>

namespace lsh {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0))
        throw ConfigError(std::string(name) + " must lie in [0,1]");
}

// count * log(p) with the 0 * log 0 = 0 convention.
double count_log(std::int64_t count, double p) {
    if (count == 0) return 0.0;
    if (p <= 0.0) return -std::numeric_limits<double>::infinity();
    return static_cast<double>(count) * std::log(p);
}

} // namespace

double log_likelihood_symmetric(const DiscrepancyCounts& counts, std::span<const double> phi) {
    if (static_cast<int>(phi.size()) != counts.max_order - 1)
        throw ConfigError("likelihood: phi list does not cover orders 2..K");
    double ll = 0.0;
    for (int k = 2; k <= counts.max_order; ++k) {
        const double p = phi[static_cast<std::size_t>(k - 2)];
        check_probability(p, "phi");
        const auto& row = counts.order(k);
        const std::int64_t d = row.d10 + row.d01;
        ll += count_log(d, p) + count_log(row.total() - d, 1.0 - p);
    }
    return ll;
}

double log_likelihood_asymmetric(const DiscrepancyCounts& counts, std::span<const double> psi0,
                                 std::span<const double> psi1) {
    if (static_cast<int>(psi0.size()) != counts.max_order - 1 || psi0.size() != psi1.size())
        throw ConfigError("likelihood: psi lists do not cover orders 2..K");
    double ll = 0.0;
    for (int k = 2; k <= counts.max_order; ++k) {
        const double p0 = psi0[static_cast<std::size_t>(k - 2)];
        const double p1 = psi1[static_cast<std::size_t>(k - 2)];
        check_probability(p0, "psi0");
        check_probability(p1, "psi1");
        const auto& row = counts.order(k);
        ll += count_log(row.d10, p1) + count_log(row.d11, 1.0 - p1) + count_log(row.d01, p0) +
              count_log(row.d00, 1.0 - p0);
    }
    return ll;
}

} // namespace lsh
