#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rlnc/qcombin.hpp"

namespace rlnc {

enum class Mode { NonSystematic, Systematic };

const char* mode_name(Mode mode);            // "ns" / "sys"
Mode parse_mode(const std::string& name);

enum class Provenance { Analytic, Simulated, Exhaustive };

const char* provenance_name(Provenance p);   // "analytic" / "simulated" / "exhaustive"

/// Non-systematic reception: n uniformly random coded packets out of a
/// message of k source packets over F_q; x is the recovery threshold.
struct ScenarioNS {
    std::uint32_t q = 2;
    long k = 1;
    long n = 0;
    long x = 0;
};

/// Systematic reception: the transmitter sends the k source packets
/// followed by n_t - k coded packets; the receiver holds n of the n_t.
struct ScenarioSys {
    std::uint32_t q = 2;
    long k = 1;
    long n_t = 1;
    long n = 0;
    long x = 0;
};

/// The curve x -> P(at least x source packets recoverable), x = 0..k.
/// at_least[0] is always 1 and the values are non-increasing in x.
struct DecodeProfile {
    Mode mode = Mode::NonSystematic;
    std::uint32_t q = 2;
    long k = 1;
    long n_t = -1;  // negative when not applicable
    long n = 0;
    Provenance provenance = Provenance::Analytic;
    std::vector<Rational> at_least;
};

// Exact counting layer. These return non-negative integers and treat
// out-of-range Gaussian binomials as zero, which makes the alternating
// sums collapse cleanly at the boundaries.

/// Number of b-dimensional subspaces of F_q^a containing none of the a
/// unit vectors.
BigInt count_unit_free_subspaces(long a, long b, std::uint32_t q);

/// Number of r-dimensional subspaces of F_q^k containing at least x of the
/// k unit vectors.
BigInt count_subspaces_with_units(long k, long r, long x, std::uint32_t q);

// Probability layer; every return value is an exact rational in [0, 1].

/// Probability that a uniformly random r-dimensional subspace of F_q^k
/// contains one fixed s-dimensional subspace; zero when s > r.
Rational p_contains_subspace(std::uint32_t q, long k, long r, long s);

/// Probability that the rowspace of a random rank-r matrix with k columns
/// contains exactly x unit vectors. Requires 0 <= x <= r <= k; the value
/// does not depend on the number of rows.
Rational p_exact_units_given_rank(std::uint32_t q, long k, long r, long x);

/// Probability of at least x unit vectors under the same conditioning.
Rational p_atleast_units_given_rank(std::uint32_t q, long k, long r, long x);

/// Probability that at least x of the k source packets are recoverable
/// from n non-systematic packets. Returns 1 when x = 0 and 0 when
/// x > min(n, k).
Rational p_ns_atleast(const ScenarioNS& sc);

/// Systematic counterpart. While the transmitter is still in its
/// source-packet phase (n_t <= k) the value is a step: 1 for x <= n, else
/// 0. Throws ReceivedExceedsTransmittedError when n > n_t.
Rational p_sys_atleast(const ScenarioSys& sc);

/// Evaluates the analytic at-least curve for every x in 0..k. n_t is
/// ignored in non-systematic mode.
DecodeProfile decode_profile(Mode mode, std::uint32_t q, long k, long n_t, long n);

}  // namespace rlnc
