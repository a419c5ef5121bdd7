#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "rlnc/gf.hpp"
#include "rlnc/partial.hpp"

namespace rlnc {

/// Dense matrix of coding vectors over a finite field, row-major. n = 0
/// (no rows) is a valid empty matrix.
class GFMatrix {
  public:
    GFMatrix(std::shared_ptr<const Field> field, long rows, long cols);

    const Field& field() const { return *field_; }
    std::shared_ptr<const Field> field_ptr() const { return field_; }
    long rows() const { return rows_; }
    long cols() const { return cols_; }

    Element at(long r, long c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    void set(long r, long c, Element v) { data_[static_cast<std::size_t>(r) * cols_ + c] = v; }
    Element* row(long r) { return data_.data() + static_cast<std::size_t>(r) * cols_; }
    const Element* row(long r) const { return data_.data() + static_cast<std::size_t>(r) * cols_; }

    bool operator==(const GFMatrix& other) const = default;

  private:
    std::shared_ptr<const Field> field_;
    long rows_;
    long cols_;
    std::vector<Element> data_;
};

/// Canonical reduced row echelon form: pivots are 1 and the only nonzero
/// entries in their columns, pivot columns strictly increase, zero rows
/// sink to the bottom. Idempotent.
GFMatrix rref(const GFMatrix& m);

/// In-place variant; returns the rank (number of pivots).
long rref_in_place(GFMatrix& m);

/// |X|: how many of the k unit vectors lie in the rowspace. A unit vector
/// e_i lies in the rowspace exactly when the reduced form has the row e_i:
/// the RREF row with pivot in column i is the only candidate, since every
/// rowspace member with leading column i equals that row up to scale.
long count_recoverable(const GFMatrix& m);

/// Counter-based generator "rlnc-sm64ctr-v1": every output is a pure
/// function of (seed, trial, draw index) built from splitmix64 finalizer
/// rounds, so any trial can be replayed on any worker without shared
/// state. Uniform ranges use rejection sampling; the modular shortcut is
/// taken only when the range divides 2^64 (powers of two), so draws are
/// bias-free either way.
class CounterRng {
  public:
    static constexpr const char* kName = "rlnc-sm64ctr-v1";

    CounterRng(std::uint64_t seed, std::uint64_t trial);

    std::uint64_t next();

    /// Uniform value in [0, bound), bound >= 1.
    std::uint64_t next_below(std::uint64_t bound);

    /// Uniform field element in [0, q).
    Element next_element(std::uint32_t q) { return static_cast<Element>(next_below(q)); }

    /// True with probability num/den.
    bool bernoulli(std::uint64_t num, std::uint64_t den) { return next_below(den) < num; }

  private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

/// Aggregated result of a batch of simulated receptions. Counts are merged
/// integer totals, so reports are byte-identical for a given (parameters,
/// seed) no matter how trials were scheduled.
struct TrialReport {
    std::string kind;  // "ns", "sys", "erasure-ns", "erasure-sys"
    std::uint32_t q = 2;
    long k = 1;
    long n_t = -1;  // negative when not applicable
    long n = -1;    // negative when the survivor count varies (erasure)
    Rational eps = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::string rng = CounterRng::kName;

    /// atleast_count[x] = number of trials with |X| >= x, x = 0..k.
    std::vector<std::uint64_t> atleast_count;
    /// rank_count[r] = number of trials whose matrix had rank r, r = 0..k.
    std::vector<std::uint64_t> rank_count;

    /// Empirical P(|X| >= x) as an exact count ratio.
    Rational frequency(long x) const;
    /// Binomial standard error sqrt(p(1-p)/trials) of frequency(x).
    double standard_error(long x) const;
    DecodeProfile profile() const;

    /// CSV rows `x,count_atleast,frequency`, plus header.
    void write_csv(std::ostream& out) const;
    /// Line-delimited summary: one `report ...` line, `rank ...` and
    /// `x ...` lines.
    void write_summary(std::ostream& out) const;
};

/// Uniformly random n x k matrices; each trial is one reception.
TrialReport simulate_ns(const std::shared_ptr<const Field>& field, long k, long n,
                        std::uint64_t trials, std::uint64_t seed);

/// Systematic reception: of n_t transmitted packets (the first k are the
/// source packets, the rest uniform coded packets), a uniformly random
/// n-subset survives. |X| is counted on the full received matrix rather
/// than through any source/coded split.
TrialReport simulate_sys(const std::shared_ptr<const Field>& field, long k, long n_t, long n,
                         std::uint64_t trials, std::uint64_t seed);

/// Bernoulli erasures: each of the n_t packets independently survives with
/// probability 1 - eps. eps must have a denominator fitting in 64 bits.
TrialReport simulate_erasure(const std::shared_ptr<const Field>& field, long k, long n_t,
                             const Rational& eps, Mode mode, std::uint64_t trials,
                             std::uint64_t seed);

/// Exhaustive ground truth: enumerates every matrix in F_q^(n x k) and
/// tallies (rank, |X|). Guarded by q^(nk) <= 2^24.
struct ExhaustiveNsReport {
    DecodeProfile profile;
    /// joint_count[r][x] = number of matrices with rank r and exactly x
    /// recoverable packets; sums to q^(nk).
    std::vector<std::vector<std::uint64_t>> joint_count;
    std::uint64_t total = 0;

    /// Exact P(|X| >= x | rank = r) from the joint tallies.
    Rational atleast_given_rank(long r, long x) const;
    /// Exact P(rank = r).
    Rational rank_probability(long r) const;
};

ExhaustiveNsReport exhaustive_oracle_ns(const std::shared_ptr<const Field>& field, long k, long n);

/// Exhaustive ground truth for systematic reception: sums over all
/// C(n_t, n) survivor subsets and all assignments of the selected coded
/// rows. Guarded by C(n_t, n) * q^(nk) <= 2^26.
DecodeProfile exhaustive_oracle_sys(const std::shared_ptr<const Field>& field, long k, long n_t,
                                    long n);

}  // namespace rlnc
