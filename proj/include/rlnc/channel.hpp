#pragma once

#include <cstdint>
#include <vector>

#include "rlnc/partial.hpp"

namespace rlnc {

/// Broadcast of n_t packets through a Bernoulli erasure channel: each packet
/// is lost independently with probability eps (an exact rational, so the
/// mixture below stays exact).
struct ErasureScenario {
    std::uint32_t q = 2;
    long k = 1;
    long n_t = 1;
    Rational eps = 0;
    long x = 0;
    Mode mode = Mode::NonSystematic;
};

/// P(at least x recoverable) = sum over the number n of surviving packets
/// of Binomial(n_t, 1 - eps) weights times the conditional recovery
/// probability for the scenario's mode.
Rational p_erasure_atleast(const ErasureScenario& sc);

struct ErasureCurvePoint {
    long n_t = 0;
    long x = 0;
    Rational p;
};

/// p_erasure_atleast on the grid n_t_lo..n_t_hi times xs, ordered n_t-major
/// then x in the given order. Conditional probabilities that do not depend
/// on n_t are shared across the grid.
std::vector<ErasureCurvePoint> erasure_curve(std::uint32_t q, long k, const Rational& eps,
                                             Mode mode, const std::vector<long>& xs,
                                             long n_t_lo, long n_t_hi);

}  // namespace rlnc
