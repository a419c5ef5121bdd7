#include "rlnc/qcombin.hpp"

#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "rlnc/errors.hpp"

namespace rlnc {

BigInt binomial(long m, long d) {
    if (m < 0) throw InvalidRangeError("binomial: m must be non-negative");
    if (d < 0 || d > m) return 0;
    if (d > m - d) d = m - d;
    BigInt acc = 1;
    for (long i = 1; i <= d; ++i) {
        acc *= (m - d + i);
        acc /= i;  // exact: acc is C(m-d+i, i) after this step
    }
    return acc;
}

namespace {

std::mutex g_qbinom_mutex;
std::map<std::tuple<long, long, std::uint32_t>, BigInt> g_qbinom_cache;

BigInt gaussian_binomial_uncached(long m, long d, std::uint32_t q) {
    // q-factorial product formula, one exactly divisible step at a time:
    // the partial product after step i equals qbinom(m-d+i, i).
    BigInt acc = 1;
    BigInt qp_num = int_pow(q, static_cast<unsigned long>(m - d));  // q^(m-d+i) running
    BigInt qp_den = 1;                                              // q^i running
    for (long i = 1; i <= d; ++i) {
        qp_num *= q;
        qp_den *= q;
        acc *= qp_num - 1;
        BigInt rem;
        boost::multiprecision::divide_qr(acc, BigInt(qp_den - 1), acc, rem);
        assert(rem == 0);
    }
    return acc;
}

}  // namespace

BigInt gaussian_binomial(long m, long d, std::uint32_t q) {
    if (m < 0) throw InvalidRangeError("gaussian_binomial: m must be non-negative");
    if (q < 2) throw InvalidRangeError("gaussian_binomial: q must be at least 2");
    if (d < 0 || d > m) return 0;
    if (d > m - d) d = m - d;  // symmetry keeps the cache small
    const auto key = std::make_tuple(m, d, q);
    {
        std::lock_guard<std::mutex> lock(g_qbinom_mutex);
        auto it = g_qbinom_cache.find(key);
        if (it != g_qbinom_cache.end()) return it->second;
    }
    BigInt value = gaussian_binomial_uncached(m, d, q);
    std::lock_guard<std::mutex> lock(g_qbinom_mutex);
    return g_qbinom_cache.emplace(key, std::move(value)).first->second;
}

BigInt count_independent_tuples(long r, long n, std::uint32_t q) {
    if (r < 0 || n < 0) throw InvalidRangeError("count_independent_tuples: negative argument");
    if (q < 2) throw InvalidRangeError("count_independent_tuples: q must be at least 2");
    if (r > n) return 0;
    const BigInt qn = int_pow(q, static_cast<unsigned long>(n));
    BigInt acc = 1;
    BigInt ql = 1;  // q^l
    for (long l = 0; l < r; ++l) {
        acc *= qn - ql;
        ql *= q;
    }
    return acc;
}

BigInt int_pow(std::uint32_t q, unsigned long e) {
    return boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(e));
}

std::string to_decimal_string(const Rational& value, int significant_digits) {
    if (significant_digits < 1) throw InvalidRangeError("precision must be at least 1");
    if (value < 0 || value > 1) throw InvalidRangeError("to_decimal_string expects a value in [0, 1]");
    const BigInt num = boost::multiprecision::numerator(value);
    const BigInt den = boost::multiprecision::denominator(value);
    if (num == 0) return "0";
    if (num == den) return "1";

    // Smallest t >= 1 with value * 10^t >= 1; the leading digit sits at
    // position 10^-t.
    long t = 1;
    BigInt scaled = num * 10;
    while (scaled < den) {
        scaled *= 10;
        ++t;
    }

    // Round num/den * 10^(t + sig - 1) half-to-even to an integer mantissa.
    BigInt shifted = num * int_pow(10, static_cast<unsigned long>(t + significant_digits - 1));
    BigInt mant, rem;
    boost::multiprecision::divide_qr(shifted, den, mant, rem);
    const int cmp = (rem * 2 < den) ? -1 : (rem * 2 > den ? 1 : 0);
    if (cmp > 0 || (cmp == 0 && boost::multiprecision::bit_test(mant, 0))) ++mant;
    // Rounding may carry into the next decade (e.g. 0.0999 -> 0.1).
    if (mant == int_pow(10, static_cast<unsigned long>(significant_digits))) {
        mant /= 10;
        --t;
        if (t == 0) return "1";
    }

    std::string digits = mant.str();
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();

    if (t <= 4) {
        std::string out = "0.";
        out.append(static_cast<std::size_t>(t - 1), '0');
        out += digits;
        return out;
    }
    // Scientific notation for small magnitudes.
    std::string out(1, digits[0]);
    if (digits.size() > 1) {
        out += '.';
        out += digits.substr(1);
    }
    out += "e-";
    const std::string exp = std::to_string(t);
    if (exp.size() < 2) out += '0';
    out += exp;
    return out;
}

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw InvalidRangeError("empty rational literal");
    std::string body = text;
    bool negative = false;
    if (body[0] == '+' || body[0] == '-') {
        negative = body[0] == '-';
        body.erase(0, 1);
        if (body.empty()) throw InvalidRangeError("bad rational literal");
    }
    try {
        Rational value;
        const auto slash = body.find('/');
        if (slash != std::string::npos) {
            const BigInt n(body.substr(0, slash));
            const BigInt d(body.substr(slash + 1));
            if (d == 0) throw DivisionByZeroError("rational literal with zero denominator");
            value = Rational(n, d);
        } else {
            const auto dot = body.find('.');
            if (dot == std::string::npos) {
                value = Rational(BigInt(body));
            } else {
                const std::string int_part = body.substr(0, dot);
                const std::string frac_part = body.substr(dot + 1);
                if (int_part.empty() && frac_part.empty()) throw InvalidRangeError("bad rational literal");
                BigInt n = int_part.empty() ? BigInt(0) : BigInt(int_part);
                const BigInt scale = int_pow(10, frac_part.size());
                n *= scale;
                if (!frac_part.empty()) n += BigInt(frac_part);
                value = Rational(n, scale);
            }
        }
        return negative ? Rational(-value) : value;
    } catch (const std::runtime_error& e) {
        throw InvalidRangeError(std::string("bad rational literal '") + text + "': " + e.what());
    }
}

}  // namespace rlnc
