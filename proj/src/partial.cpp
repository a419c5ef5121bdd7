#include "rlnc/partial.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <mutex>
#include <tuple>

#include "rlnc/errors.hpp"

namespace rlnc {

const char* mode_name(Mode mode) {
    return mode == Mode::NonSystematic ? "ns" : "sys";
}

Mode parse_mode(const std::string& name) {
    if (name == "ns") return Mode::NonSystematic;
    if (name == "sys") return Mode::Systematic;
    throw InvalidRangeError("unknown mode '" + name + "' (expected ns or sys)");
}

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Analytic: return "analytic";
        case Provenance::Simulated: return "simulated";
        default: return "exhaustive";
    }
}

namespace {

void check_ns(const ScenarioNS& sc) {
    if (sc.q < 2) throw InvalidRangeError("q must be at least 2");
    if (sc.k < 1) throw InvalidRangeError("k must be at least 1");
    if (sc.n < 0) throw InvalidRangeError("n must be non-negative");
    if (sc.x < 0 || sc.x > sc.k) throw InvalidRangeError("x must lie in [0, k]");
}

void check_sys(const ScenarioSys& sc) {
    if (sc.q < 2) throw InvalidRangeError("q must be at least 2");
    if (sc.k < 1) throw InvalidRangeError("k must be at least 1");
    if (sc.n_t < 1) throw InvalidRangeError("n_t must be at least 1");
    if (sc.n < 0) throw InvalidRangeError("n must be non-negative");
    if (sc.n > sc.n_t)
        throw ReceivedExceedsTransmittedError("n exceeds the number of transmitted packets");
    if (sc.x < 0 || sc.x > sc.k) throw InvalidRangeError("x must lie in [0, k]");
}

std::mutex g_count_mutex;
std::map<std::tuple<long, long, std::uint32_t>, BigInt> g_unit_free_cache;
std::map<std::tuple<long, long, long, std::uint32_t>, BigInt> g_with_units_cache;
std::mutex g_ns_num_mutex;
std::map<std::tuple<long, long, long, std::uint32_t>, BigInt> g_ns_num_cache;

}  // namespace

BigInt count_unit_free_subspaces(long a, long b, std::uint32_t q) {
    if (a < 0 || b < 0 || b > a) return 0;
    const auto key = std::make_tuple(a, b, q);
    {
        std::lock_guard<std::mutex> lock(g_count_mutex);
        auto it = g_unit_free_cache.find(key);
        if (it != g_unit_free_cache.end()) return it->second;
    }
    // Inclusion-exclusion over the set of unit vectors forced into the
    // subspace; out-of-range Gaussian binomials vanish.
    BigInt acc = 0;
    for (long j = 0; j <= a; ++j) {
        const BigInt term = binomial(a, j) * gaussian_binomial(a - j, b - j, q);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    assert(acc >= 0);
    std::lock_guard<std::mutex> lock(g_count_mutex);
    return g_unit_free_cache.emplace(key, std::move(acc)).first->second;
}

BigInt count_subspaces_with_units(long k, long r, long x, std::uint32_t q) {
    if (k < 0 || r < 0 || r > k) return 0;
    if (x < 0) x = 0;
    if (x > r) return 0;
    const auto key = std::make_tuple(k, r, x, q);
    {
        std::lock_guard<std::mutex> lock(g_count_mutex);
        auto it = g_with_units_cache.find(key);
        if (it != g_with_units_cache.end()) return it->second;
    }
    BigInt acc = 0;
    for (long i = x; i <= r; ++i)
        acc += binomial(k, i) * count_unit_free_subspaces(k - i, r - i, q);
    std::lock_guard<std::mutex> lock(g_count_mutex);
    return g_with_units_cache.emplace(key, std::move(acc)).first->second;
}

Rational p_contains_subspace(std::uint32_t q, long k, long r, long s) {
    if (q < 2) throw InvalidRangeError("q must be at least 2");
    if (s < 0 || s > k || r < 0 || r > k) throw InvalidRangeError("need 0 <= s, r <= k");
    if (s > r) return 0;
    return Rational(gaussian_binomial(k - s, r - s, q), gaussian_binomial(k, r, q));
}

Rational p_exact_units_given_rank(std::uint32_t q, long k, long r, long x) {
    if (q < 2) throw InvalidRangeError("q must be at least 2");
    if (x < 0 || x > r || r > k || k < 0) throw InvalidRangeError("need 0 <= x <= r <= k");
    return Rational(binomial(k, x) * count_unit_free_subspaces(k - x, r - x, q),
                    gaussian_binomial(k, r, q));
}

Rational p_atleast_units_given_rank(std::uint32_t q, long k, long r, long x) {
    if (q < 2) throw InvalidRangeError("q must be at least 2");
    if (x < 0 || x > r || r > k || k < 0) throw InvalidRangeError("need 0 <= x <= r <= k");
    if (x == 0) return 1;
    return Rational(count_subspaces_with_units(k, r, x, q), gaussian_binomial(k, r, q));
}

namespace {

// Integer numerator of the non-systematic at-least probability over the
// denominator q^(nk): sum over ranks r of the number of rank-r rowspaces
// containing enough unit vectors, weighted by the count of n-row matrices
// with that rowspace. Signed subspace counts stay in exact integers; the
// single division happens in the callers. Memoized on (k, n, x, q).
BigInt ns_atleast_numerator(long k, long n, long x, std::uint32_t q) {
    if (x <= 0) return int_pow(q, static_cast<unsigned long>(n) * k);
    const long rmax = std::min(n, k);
    if (x > rmax) return 0;
    const auto key = std::make_tuple(k, n, x, q);
    {
        std::lock_guard<std::mutex> lock(g_ns_num_mutex);
        auto it = g_ns_num_cache.find(key);
        if (it != g_ns_num_cache.end()) return it->second;
    }
    const BigInt qn = int_pow(q, static_cast<unsigned long>(n));
    BigInt num = 0;
    BigInt ladder = 1;  // count_independent_tuples(r, n, q), built incrementally
    BigInt ql = 1;
    for (long r = 1; r <= rmax; ++r) {
        ladder *= qn - ql;
        ql *= q;
        if (r >= x) num += count_subspaces_with_units(k, r, x, q) * ladder;
    }
    std::lock_guard<std::mutex> lock(g_ns_num_mutex);
    return g_ns_num_cache.emplace(key, std::move(num)).first->second;
}

}  // namespace

Rational p_ns_atleast(const ScenarioNS& sc) {
    check_ns(sc);
    if (sc.x == 0) return 1;
    return Rational(ns_atleast_numerator(sc.k, sc.n, sc.x, sc.q),
                    int_pow(sc.q, static_cast<unsigned long>(sc.n) * sc.k));
}

Rational p_sys_atleast(const ScenarioSys& sc) {
    check_sys(sc);
    if (sc.x == 0) return 1;
    if (sc.n_t <= sc.k) return sc.x <= sc.n ? 1 : 0;
    const long rmax = std::min(sc.n, sc.k);
    if (sc.x > rmax) return 0;

    // Condition on h, the number of received source packets: a
    // hypergeometric weight times the non-systematic problem reduced to the
    // k-h unresolved packets and n-h received coded packets. Everything is
    // accumulated over the common denominator C(n_t, n) * q^emax; the
    // reduced exponent (n-h)(k-h) is largest at h = h_min.
    const long h_min = std::max(0L, sc.n - sc.n_t + sc.k);
    const long h_max = std::min(sc.n, sc.k);
    const unsigned long emax =
        static_cast<unsigned long>(sc.n - h_min) * static_cast<unsigned long>(sc.k - h_min);
    BigInt num = 0;
    for (long h = h_min; h <= h_max; ++h) {
        const BigInt received_split = binomial(sc.k, h) * binomial(sc.n_t - sc.k, sc.n - h);
        if (received_split == 0) continue;
        const long k1 = sc.k - h;  // source packets still unresolved
        const long n1 = sc.n - h;  // coded packets among the received
        const long x1 = std::max(0L, sc.x - h);
        const BigInt reduced = ns_atleast_numerator(k1, n1, x1, sc.q);
        if (reduced == 0) continue;
        const unsigned long e = static_cast<unsigned long>(n1) * static_cast<unsigned long>(k1);
        num += received_split * int_pow(sc.q, emax - e) * reduced;
    }
    return Rational(num, binomial(sc.n_t, sc.n) * int_pow(sc.q, emax));
}

DecodeProfile decode_profile(Mode mode, std::uint32_t q, long k, long n_t, long n) {
    DecodeProfile profile;
    profile.mode = mode;
    profile.q = q;
    profile.k = k;
    profile.n_t = mode == Mode::Systematic ? n_t : -1;
    profile.n = n;
    profile.provenance = Provenance::Analytic;
    profile.at_least.reserve(k + 1);
    for (long x = 0; x <= k; ++x) {
        if (mode == Mode::NonSystematic)
            profile.at_least.push_back(p_ns_atleast({q, k, n, x}));
        else
            profile.at_least.push_back(p_sys_atleast({q, k, n_t, n, x}));
    }
    return profile;
}

}  // namespace rlnc
