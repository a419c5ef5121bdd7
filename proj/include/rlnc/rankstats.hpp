#pragma once

#include <cstdint>
#include <vector>

#include "rlnc/qcombin.hpp"

namespace rlnc {

/// Exact distribution of the rank of a uniformly random n x k matrix
/// over F_q. probabilities[r] = P(rank = r) for r = 0..min(n, k); the
/// entries sum to exactly 1.
struct RankPmf {
    std::uint32_t q = 2;
    long k = 1;
    long n = 0;
    std::vector<Rational> probabilities;

    long max_rank() const { return static_cast<long>(probabilities.size()) - 1; }
};

/// P(rank = r) = q^(-nk) * qbinom(n, r) * prod_{l<r} (q^k - q^l), materialized
/// for all ranks at once. n = 0 gives a point mass at rank 0.
RankPmf rank_pmf(std::uint32_t q, long k, long n);

}  // namespace rlnc
