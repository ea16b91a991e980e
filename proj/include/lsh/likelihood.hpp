#pragma once

#include <span>

#include "lsh/hypergraph.hpp"

namespace lsh {

/// Symmetric-noise log-likelihood: per order k,
///   d_k log(phi_k) + (C(N,k) - d_k) log(1 - phi_k),  d_k = d10 + d01.
/// Boundary convention 0 * log 0 = 0; a strictly impossible configuration
/// with positive count yields -inf.
double log_likelihood_symmetric(const DiscrepancyCounts& counts, std::span<const double> phi);

/// Asymmetric-noise log-likelihood: per order k,
///   d10 log(psi1) + d11 log(1 - psi1) + d01 log(psi0) + d00 log(1 - psi0).
double log_likelihood_asymmetric(const DiscrepancyCounts& counts, std::span<const double> psi0,
                                 std::span<const double> psi1);

} // namespace lsh
