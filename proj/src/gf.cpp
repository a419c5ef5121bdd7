#include "rlnc/gf.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace rlnc {

namespace {

constexpr std::uint64_t kMaxOrder = 1u << 16;

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct DefaultModulus {
    std::uint32_t p;
    unsigned m;
    std::initializer_list<std::uint32_t> coeffs;  // lowest degree first
};

// Lexicographically smallest monic irreducible polynomial per (p, m),
// ordered by the base-p encoding of the non-leading coefficients. Fixed so
// that simulation runs are replayable bit for bit across builds.
constexpr DefaultModulus kDefaultModuli[] = {
    {2, 1, {0, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 0, 0, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 1, 0, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 1, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 12, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 14, {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 16, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 1, {0, 1}},
    {3, 2, {1, 0, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {5, 1, {0, 1}},
    {5, 2, {2, 0, 1}},
    {5, 3, {1, 1, 0, 1}},
    {5, 4, {2, 0, 0, 0, 1}},
    {7, 1, {0, 1}},
    {7, 2, {1, 0, 1}},
    {7, 3, {2, 0, 0, 1}},
    {7, 4, {1, 1, 0, 0, 1}},
    {11, 1, {0, 1}},
    {11, 2, {1, 0, 1}},
    {11, 3, {4, 1, 0, 1}},
    {11, 4, {2, 1, 0, 0, 1}},
    {13, 1, {0, 1}},
    {13, 2, {2, 0, 1}},
    {13, 3, {2, 0, 0, 1}},
    {13, 4, {2, 0, 0, 0, 1}},
};

std::vector<std::uint32_t> default_modulus(std::uint32_t p, unsigned m) {
    for (const auto& e : kDefaultModuli)
        if (e.p == p && e.m == m) return std::vector<std::uint32_t>(e.coeffs);
    throw NoDefaultModulusError("no default modulus for p=" + std::to_string(p) +
                                ", m=" + std::to_string(m) + "; pass one explicitly");
}

// Polynomials over F_p as coefficient vectors, lowest degree first, no
// trailing zeros.
using Poly = std::vector<std::uint32_t>;

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Remainder of a mod b; b must be monic.
Poly poly_mod(Poly a, const Poly& b, std::uint32_t p) {
    a = trim(std::move(a));
    const std::size_t db = b.size() - 1;
    while (a.size() >= b.size()) {
        const std::uint32_t lead = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (std::size_t i = 0; i <= db; ++i) {
            std::uint64_t v = a[shift + i] + static_cast<std::uint64_t>(lead) * (p - b[i] % p);
            a[shift + i] = static_cast<std::uint32_t>(v % p);
        }
        a = trim(std::move(a));
    }
    return a;
}

bool divides(const Poly& divisor, const Poly& target, std::uint32_t p) {
    return poly_mod(target, divisor, p).empty();
}

// Trial division by every monic polynomial of degree <= deg(f)/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::size_t m = f.size() - 1;
    if (m == 0) return false;
    if (m == 1) return true;
    for (std::size_t d = 1; d <= m / 2; ++d) {
        // Enumerate monic degree-d candidates by their base-p encoded low part.
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly cand(d + 1, 0);
            std::uint64_t c = code;
            for (std::size_t i = 0; i < d; ++i) {
                cand[i] = static_cast<std::uint32_t>(c % p);
                c /= p;
            }
            cand[d] = 1;
            if (divides(cand, f, p)) return false;
        }
    }
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> fs;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

}  // namespace

std::optional<std::pair<std::uint32_t, unsigned>> prime_power_split(std::uint64_t q) {
    if (q < 2) return std::nullopt;
    std::uint64_t p = q;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    unsigned m = 0;
    std::uint64_t rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1) return std::nullopt;
    return std::make_pair(static_cast<std::uint32_t>(p), m);
}

Field::Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus) : p_(p), m_(m) {
    if (!is_prime(p)) throw NotPrimeError("characteristic " + std::to_string(p) + " is not prime");
    if (m < 1) throw InvalidRangeError("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (unsigned i = 0; i < m; ++i) {
        q *= p;
        if (q > kMaxOrder) throw TooLargeError("field order exceeds 2^16");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = modulus.empty() ? default_modulus(p, m) : std::move(modulus);
    if (modulus_.size() != m + 1 || modulus_.back() != 1)
        throw ReduciblePolynomialError("modulus must be monic of degree m");
    for (auto c : modulus_)
        if (c >= p) throw ReduciblePolynomialError("modulus coefficient out of range");
    if (!is_irreducible(modulus_, p))
        throw ReduciblePolynomialError("modulus is reducible over F_p");
    build_tables();
}

std::shared_ptr<const Field> Field::of_order(std::uint64_t q) {
    const auto pm = prime_power_split(q);
    if (!pm) throw NotPrimeError(std::to_string(q) + " is not a prime power");
    return std::make_shared<const Field>(pm->first, pm->second);
}

Element Field::add_digits(Element a, Element b) const {
    Element out = 0;
    Element base = 1;
    for (unsigned i = 0; i < m_; ++i) {
        out += (a % p_ + b % p_) % p_ * base;
        a /= p_;
        b /= p_;
        base *= p_;
    }
    return out;
}

Element Field::sub_digits(Element a, Element b) const {
    Element out = 0;
    Element base = 1;
    for (unsigned i = 0; i < m_; ++i) {
        out += (a % p_ + p_ - b % p_) % p_ * base;
        a /= p_;
        b /= p_;
        base *= p_;
    }
    return out;
}

Element Field::mul_slow(Element a, Element b) const {
    // Convolve base-p digit vectors, then reduce modulo the field modulus.
    std::vector<std::uint32_t> da = decode(a), db = decode(b);
    std::vector<std::uint32_t> prod(2 * m_ - 1, 0);
    for (unsigned i = 0; i < m_; ++i) {
        if (da[i] == 0) continue;
        for (unsigned j = 0; j < m_; ++j)
            prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
    }
    Poly rem = poly_mod(prod, modulus_, p_);
    rem.resize(m_, 0);
    return encode(rem);
}

Element Field::pow_slow(Element a, std::uint64_t e) const {
    Element out = 1;
    Element base = a;
    while (e > 0) {
        if (e & 1) out = mul_slow(out, base);
        base = mul_slow(base, base);
        e >>= 1;
    }
    return out;
}

void Field::build_tables() {
    // Any element of multiplicative order q - 1 works as table generator;
    // candidates are checked against the prime factors of q - 1.
    const std::uint64_t group = q_ - 1;
    const auto factors = prime_factors(group);
    Element gen = 1;
    for (Element cand = 2; cand < q_; ++cand) {
        bool primitive = true;
        for (auto f : factors) {
            if (pow_slow(cand, group / f) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = cand;
            break;
        }
    }
    exp_.assign(group, 0);
    log_.assign(q_, 0);
    Element v = 1;
    for (std::uint64_t i = 0; i < group; ++i) {
        exp_[i] = v;
        log_[v] = static_cast<std::uint32_t>(i);
        v = mul_slow(v, gen);
    }
    assert(v == 1);
}

Element Field::pow(Element a, std::uint64_t e) const {
    if (a == 0) return e == 0 ? 1 : 0;
    const std::uint64_t group = q_ - 1;
    const std::uint64_t le = (static_cast<std::uint64_t>(log_[a]) * (e % group)) % group;
    return exp_[le];
}

std::vector<std::uint32_t> Field::decode(Element a) const {
    std::vector<std::uint32_t> digits(m_, 0);
    for (unsigned i = 0; i < m_; ++i) {
        digits[i] = a % p_;
        a /= p_;
    }
    return digits;
}

Element Field::encode(const std::vector<std::uint32_t>& digits) const {
    if (digits.size() > m_) throw InvalidRangeError("digit vector longer than field degree");
    Element out = 0;
    Element base = 1;
    for (unsigned i = 0; i < m_; ++i) {
        const std::uint32_t d = i < digits.size() ? digits[i] : 0;
        if (d >= p_) throw InvalidRangeError("digit out of range");
        out += d * base;
        base *= p_;
    }
    return out;
}

}  // namespace rlnc
