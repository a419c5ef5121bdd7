#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "rlnc/errors.hpp"

namespace rlnc {

/// A field element, encoded as an integer in [0, q): the coefficient vector
/// of the polynomial basis packed base p (digit i = coefficient of x^i).
/// For p = 2 this is the usual bit packing.
using Element = std::uint32_t;

/// Splits q into (p, m) with q = p^m and p prime, if such a pair exists.
std::optional<std::pair<std::uint32_t, unsigned>> prime_power_split(std::uint64_t q);

/// Arithmetic over F_q, q = p^m <= 2^16. Immutable after construction; all
/// operations are pure and safe to call concurrently.
///
/// Multiplication and inversion go through discrete log/antilog tables built
/// once at construction from a computed generator of the multiplicative
/// group, so they are modulus-correct even when x itself is not primitive.
class Field {
  public:
    /// Validates p prime, m >= 1, q <= 2^16 and the modulus monic and
    /// irreducible (trial division by every monic polynomial of degree
    /// <= m/2). An empty modulus selects the built-in default for (p, m):
    /// the lexicographically smallest monic irreducible, taken from a
    /// fixed table covering p = 2, m <= 16 and p <= 13, m <= 4.
    Field(std::uint32_t p, unsigned m, std::vector<std::uint32_t> modulus = {});

    /// Builds the field of order q with the default modulus.
    static std::shared_ptr<const Field> of_order(std::uint64_t q);

    std::uint32_t characteristic() const { return p_; }
    unsigned degree() const { return m_; }
    std::uint32_t order() const { return q_; }
    /// Modulus coefficients, lowest degree first, length m + 1, monic.
    const std::vector<std::uint32_t>& modulus() const { return modulus_; }
    /// Generator of the multiplicative group used for the tables.
    Element generator() const { return exp_[q_ > 2 ? 1 : 0]; }

    Element add(Element a, Element b) const {
        if (p_ == 2) return a ^ b;
        return add_digits(a, b);
    }

    Element sub(Element a, Element b) const {
        if (p_ == 2) return a ^ b;
        return sub_digits(a, b);
    }

    Element neg(Element a) const { return sub(0, a); }

    Element mul(Element a, Element b) const {
        if (a == 0 || b == 0) return 0;
        std::uint32_t s = log_[a] + log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }

    Element inv(Element a) const {
        if (a == 0) throw DivisionByZeroError("inverse of zero");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Element div(Element a, Element b) const {
        if (b == 0) throw DivisionByZeroError("division by zero");
        if (a == 0) return 0;
        std::uint32_t s = log_[a] + (q_ - 1) - log_[b];
        if (s >= q_ - 1) s -= q_ - 1;
        return exp_[s];
    }

    Element pow(Element a, std::uint64_t e) const;

    /// Base-p digit vector (length m) of an encoded element.
    std::vector<std::uint32_t> decode(Element a) const;
    /// Inverse of decode; digits beyond degree m must be absent.
    Element encode(const std::vector<std::uint32_t>& digits) const;

  private:
    Element add_digits(Element a, Element b) const;
    Element sub_digits(Element a, Element b) const;
    /// Polynomial-basis multiplication without tables; used during setup.
    Element mul_slow(Element a, Element b) const;
    Element pow_slow(Element a, std::uint64_t e) const;
    void build_tables();

    std::uint32_t p_;
    unsigned m_;
    std::uint32_t q_;
    std::vector<std::uint32_t> modulus_;
    std::vector<Element> exp_;        // exp_[i] = g^i, i in [0, q-1)
    std::vector<std::uint32_t> log_;  // log_[exp_[i]] = i; log_[0] unused
};

}  // namespace rlnc
