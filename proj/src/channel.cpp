#include "rlnc/channel.hpp"

#include <map>
#include <utility>

#include "rlnc/errors.hpp"

namespace rlnc {

namespace {

void check_erasure(const ErasureScenario& sc) {
    if (sc.q < 2) throw InvalidRangeError("q must be at least 2");
    if (sc.k < 1) throw InvalidRangeError("k must be at least 1");
    if (sc.n_t < 1) throw InvalidRangeError("n_t must be at least 1");
    if (sc.eps < 0 || sc.eps > 1) throw InvalidRangeError("eps must lie in [0, 1]");
    if (sc.x < 0 || sc.x > sc.k) throw InvalidRangeError("x must lie in [0, k]");
}

Rational rational_pow(const Rational& base, unsigned long e) {
    using boost::multiprecision::pow;
    if (e == 0) return 1;
    return Rational(pow(boost::multiprecision::numerator(base), static_cast<unsigned>(e)),
                    pow(boost::multiprecision::denominator(base), static_cast<unsigned>(e)));
}

}  // namespace

Rational p_erasure_atleast(const ErasureScenario& sc) {
    check_erasure(sc);
    if (sc.x == 0) return 1;
    const Rational keep = Rational(1) - sc.eps;
    Rational total = 0;
    for (long n = sc.x; n <= sc.n_t; ++n) {
        const Rational weight = Rational(binomial(sc.n_t, n)) *
                                rational_pow(keep, static_cast<unsigned long>(n)) *
                                rational_pow(sc.eps, static_cast<unsigned long>(sc.n_t - n));
        if (weight == 0) continue;
        const Rational cond = sc.mode == Mode::NonSystematic
                                  ? p_ns_atleast({sc.q, sc.k, n, sc.x})
                                  : p_sys_atleast({sc.q, sc.k, sc.n_t, n, sc.x});
        total += weight * cond;
    }
    return total;
}

std::vector<ErasureCurvePoint> erasure_curve(std::uint32_t q, long k, const Rational& eps,
                                             Mode mode, const std::vector<long>& xs,
                                             long n_t_lo, long n_t_hi) {
    if (n_t_lo < 1 || n_t_hi < n_t_lo) throw InvalidRangeError("bad n_t range");
    for (long x : xs)
        if (x < 0 || x > k) throw InvalidRangeError("x must lie in [0, k]");

    // The non-systematic conditional P(at least x | n survivors) does not
    // depend on n_t, so it is computed once per (n, x) for the whole grid.
    std::map<std::pair<long, long>, Rational> ns_cond;
    const Rational keep = Rational(1) - eps;

    std::vector<ErasureCurvePoint> out;
    out.reserve(static_cast<std::size_t>(n_t_hi - n_t_lo + 1) * xs.size());
    for (long n_t = n_t_lo; n_t <= n_t_hi; ++n_t) {
        for (long x : xs) {
            const ErasureScenario sc{q, k, n_t, eps, x, mode};
            check_erasure(sc);
            Rational total;
            if (x == 0) {
                total = 1;
            } else if (mode == Mode::Systematic) {
                total = p_erasure_atleast(sc);
            } else {
                total = 0;
                for (long n = x; n <= n_t; ++n) {
                    const Rational weight = Rational(binomial(n_t, n)) *
                                            rational_pow(keep, static_cast<unsigned long>(n)) *
                                            rational_pow(eps, static_cast<unsigned long>(n_t - n));
                    if (weight == 0) continue;
                    auto it = ns_cond.find({n, x});
                    if (it == ns_cond.end())
                        it = ns_cond.emplace(std::make_pair(n, x), p_ns_atleast({q, k, n, x})).first;
                    total += weight * it->second;
                }
            }
            out.push_back({n_t, x, std::move(total)});
        }
    }
    return out;
}

}  // namespace rlnc
