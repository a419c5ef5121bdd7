#include "rlnc/rankstats.hpp"

#include <algorithm>

#include "rlnc/errors.hpp"

namespace rlnc {

RankPmf rank_pmf(std::uint32_t q, long k, long n) {
    if (q < 2) throw InvalidRangeError("rank_pmf: q must be at least 2");
    if (k < 1) throw InvalidRangeError("rank_pmf: k must be at least 1");
    if (n < 0) throw InvalidRangeError("rank_pmf: n must be non-negative");

    RankPmf pmf;
    pmf.q = q;
    pmf.k = k;
    pmf.n = n;
    const long rmax = std::min(n, k);
    pmf.probabilities.reserve(rmax + 1);

    const BigInt den = int_pow(q, static_cast<unsigned long>(n) * k);
    const BigInt qk = int_pow(q, static_cast<unsigned long>(k));
    BigInt ladder = 1;  // prod_{l<r} (q^k - q^l)
    BigInt ql = 1;      // q^l
    for (long r = 0; r <= rmax; ++r) {
        if (r > 0) {
            ladder *= qk - ql;
            ql *= q;
        }
        pmf.probabilities.emplace_back(gaussian_binomial(n, r, q) * ladder, den);
    }
    return pmf;
}

}  // namespace rlnc
