#include "rlnc/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <ostream>

#include "rlnc/parallel.hpp"

namespace rlnc {

GFMatrix::GFMatrix(std::shared_ptr<const Field> field, long rows, long cols)
    : field_(std::move(field)), rows_(rows), cols_(cols) {
    if (!field_) throw InvalidRangeError("matrix needs a field");
    if (rows < 0 || cols < 1) throw InvalidRangeError("bad matrix dimensions");
    data_.assign(static_cast<std::size_t>(rows) * cols, 0);
}

long rref_in_place(GFMatrix& m) {
    const Field& f = m.field();
    const long rows = m.rows();
    const long cols = m.cols();
    long piv = 0;
    for (long c = 0; c < cols && piv < rows; ++c) {
        long pr = -1;
        for (long r = piv; r < rows; ++r) {
            if (m.at(r, c) != 0) {
                pr = r;
                break;
            }
        }
        if (pr < 0) continue;
        if (pr != piv) {
            Element* a = m.row(pr);
            Element* b = m.row(piv);
            std::swap_ranges(a, a + cols, b);
        }
        Element* pivot_row = m.row(piv);
        const Element lead = pivot_row[c];
        if (lead != 1) {
            const Element ilead = f.inv(lead);
            for (long j = c; j < cols; ++j) pivot_row[j] = f.mul(ilead, pivot_row[j]);
        }
        for (long r = 0; r < rows; ++r) {
            if (r == piv) continue;
            Element* row = m.row(r);
            const Element factor = row[c];
            if (factor == 0) continue;
            if (factor == 1) {
                for (long j = c; j < cols; ++j) row[j] = f.sub(row[j], pivot_row[j]);
            } else {
                for (long j = c; j < cols; ++j) row[j] = f.sub(row[j], f.mul(factor, pivot_row[j]));
            }
        }
        ++piv;
    }
    return piv;
}

GFMatrix rref(const GFMatrix& m) {
    GFMatrix out = m;
    rref_in_place(out);
    return out;
}

namespace {

long count_unit_rows(const GFMatrix& m, long rank) {
    const long cols = m.cols();
    long units = 0;
    for (long r = 0; r < rank; ++r) {
        const Element* row = m.row(r);
        long nonzero = 0;
        for (long j = 0; j < cols && nonzero < 2; ++j)
            if (row[j] != 0) ++nonzero;
        if (nonzero == 1) ++units;  // the single entry is the pivot, value 1
    }
    return units;
}

}  // namespace

long count_recoverable(const GFMatrix& m) {
    GFMatrix reduced = m;
    const long rank = rref_in_place(reduced);
    return count_unit_rows(reduced, rank);
}

namespace {

constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t trial)
    : key_(mix64(mix64(seed + kGamma) ^ (trial + 0xd1b54a32d192ed03ULL))) {}

std::uint64_t CounterRng::next() {
    ++counter_;
    return mix64(key_ ^ (counter_ * kGamma));
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
    if (bound == 0) throw InvalidRangeError("next_below needs a positive bound");
    if ((bound & (bound - 1)) == 0) return next() & (bound - 1);
    const std::uint64_t reject = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
        const std::uint64_t u = next();
        if (u >= reject) return u % bound;
    }
}

Rational TrialReport::frequency(long x) const {
    return Rational(atleast_count.at(static_cast<std::size_t>(x)), trials);
}

double TrialReport::standard_error(long x) const {
    const double p =
        static_cast<double>(atleast_count.at(static_cast<std::size_t>(x))) / static_cast<double>(trials);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

DecodeProfile TrialReport::profile() const {
    DecodeProfile prof;
    prof.mode = kind.find("sys") != std::string::npos ? Mode::Systematic : Mode::NonSystematic;
    prof.q = q;
    prof.k = k;
    prof.n_t = n_t;
    prof.n = n;
    prof.provenance = Provenance::Simulated;
    prof.at_least.reserve(atleast_count.size());
    for (std::size_t x = 0; x < atleast_count.size(); ++x) prof.at_least.emplace_back(atleast_count[x], trials);
    return prof;
}

void TrialReport::write_csv(std::ostream& out) const {
    out << "x,count_atleast,freq_exact,freq_float\n";
    for (std::size_t x = 0; x < atleast_count.size(); ++x) {
        const Rational f(atleast_count[x], trials);
        out << x << ',' << atleast_count[x] << ',' << f << ',' << to_decimal_string(f, 12) << '\n';
    }
}

void TrialReport::write_summary(std::ostream& out) const {
    out << "report kind=" << kind << " q=" << q << " k=" << k << " n_T=";
    if (n_t >= 0)
        out << n_t;
    else
        out << '-';
    out << " n=";
    if (n >= 0)
        out << n;
    else
        out << '-';
    out << " eps=";
    if (kind.rfind("erasure", 0) == 0)
        out << eps;
    else
        out << '-';
    out << " trials=" << trials << " seed=" << seed << " rng=" << rng << '\n';
    for (std::size_t r = 0; r < rank_count.size(); ++r)
        out << "rank r=" << r << " count=" << rank_count[r] << '\n';
    for (std::size_t x = 0; x < atleast_count.size(); ++x) {
        const Rational f(atleast_count[x], trials);
        out << "x x=" << x << " atleast=" << atleast_count[x] << " freq=" << to_decimal_string(f, 12)
            << '\n';
    }
}

namespace {

struct Tally {
    std::vector<std::uint64_t> exact_x;  // trials with |X| = x
    std::vector<std::uint64_t> rank;     // trials with rank = r

    explicit Tally(long k) : exact_x(static_cast<std::size_t>(k) + 1, 0), rank(static_cast<std::size_t>(k) + 1, 0) {}

    void merge_into(Tally& global, std::mutex& mutex) const {
        std::lock_guard<std::mutex> lock(mutex);
        for (std::size_t i = 0; i < exact_x.size(); ++i) global.exact_x[i] += exact_x[i];
        for (std::size_t i = 0; i < rank.size(); ++i) global.rank[i] += rank[i];
    }
};

TrialReport finish_report(std::string kind, const std::shared_ptr<const Field>& field, long k,
                          long n_t, long n, Rational eps, std::uint64_t trials,
                          std::uint64_t seed, const Tally& tally) {
    TrialReport rep;
    rep.kind = std::move(kind);
    rep.q = field->order();
    rep.k = k;
    rep.n_t = n_t;
    rep.n = n;
    rep.eps = std::move(eps);
    rep.trials = trials;
    rep.seed = seed;
    rep.rank_count = tally.rank;
    rep.atleast_count.assign(static_cast<std::size_t>(k) + 1, 0);
    // Suffix sums turn exact-|X| tallies into at-least counts.
    std::uint64_t acc = 0;
    for (long x = k; x >= 0; --x) {
        acc += tally.exact_x[static_cast<std::size_t>(x)];
        rep.atleast_count[static_cast<std::size_t>(x)] = acc;
    }
    return rep;
}

void check_sim_args(const std::shared_ptr<const Field>& field, long k, std::uint64_t trials) {
    if (!field) throw InvalidRangeError("simulation needs a field");
    if (k < 1) throw InvalidRangeError("k must be at least 1");
    if (trials < 1) throw InvalidRangeError("trials must be at least 1");
}

}  // namespace

TrialReport simulate_ns(const std::shared_ptr<const Field>& field, long k, long n,
                        std::uint64_t trials, std::uint64_t seed) {
    check_sim_args(field, k, trials);
    if (n < 0) throw InvalidRangeError("n must be non-negative");
    const std::uint32_t q = field->order();

    Tally total(k);
    std::mutex mutex;
    parallel_chunks(trials, [&](std::uint64_t begin, std::uint64_t end) {
        Tally local(k);
        GFMatrix m(field, n, k);
        for (std::uint64_t t = begin; t < end; ++t) {
            CounterRng rng(seed, t);
            for (long r = 0; r < n; ++r) {
                Element* row = m.row(r);
                for (long c = 0; c < k; ++c) row[c] = rng.next_element(q);
            }
            const long rank = rref_in_place(m);
            ++local.exact_x[static_cast<std::size_t>(count_unit_rows(m, rank))];
            ++local.rank[static_cast<std::size_t>(rank)];
        }
        local.merge_into(total, mutex);
    });
    return finish_report("ns", field, k, -1, n, 0, trials, seed, total);
}

TrialReport simulate_sys(const std::shared_ptr<const Field>& field, long k, long n_t, long n,
                         std::uint64_t trials, std::uint64_t seed) {
    check_sim_args(field, k, trials);
    if (n_t < 1) throw InvalidRangeError("n_t must be at least 1");
    if (n < 0) throw InvalidRangeError("n must be non-negative");
    if (n > n_t) throw ReceivedExceedsTransmittedError("n exceeds the number of transmitted packets");
    const std::uint32_t q = field->order();

    Tally total(k);
    std::mutex mutex;
    parallel_chunks(trials, [&](std::uint64_t begin, std::uint64_t end) {
        Tally local(k);
        GFMatrix m(field, n, k);
        std::vector<long> pos(static_cast<std::size_t>(n_t));
        for (std::uint64_t t = begin; t < end; ++t) {
            CounterRng rng(seed, t);
            // Partial Fisher-Yates: pos[0..n) is a uniform n-subset.
            std::iota(pos.begin(), pos.end(), 0L);
            for (long i = 0; i < n; ++i) {
                const long j = i + static_cast<long>(rng.next_below(static_cast<std::uint64_t>(n_t - i)));
                std::swap(pos[static_cast<std::size_t>(i)], pos[static_cast<std::size_t>(j)]);
            }
            for (long i = 0; i < n; ++i) {
                Element* row = m.row(i);
                const long p = pos[static_cast<std::size_t>(i)];
                if (p < k) {
                    std::fill(row, row + k, 0);
                    row[p] = 1;
                } else {
                    for (long c = 0; c < k; ++c) row[c] = rng.next_element(q);
                }
            }
            const long rank = rref_in_place(m);
            ++local.exact_x[static_cast<std::size_t>(count_unit_rows(m, rank))];
            ++local.rank[static_cast<std::size_t>(rank)];
        }
        local.merge_into(total, mutex);
    });
    return finish_report("sys", field, k, n_t, n, 0, trials, seed, total);
}

TrialReport simulate_erasure(const std::shared_ptr<const Field>& field, long k, long n_t,
                             const Rational& eps, Mode mode, std::uint64_t trials,
                             std::uint64_t seed) {
    check_sim_args(field, k, trials);
    if (n_t < 1) throw InvalidRangeError("n_t must be at least 1");
    if (eps < 0 || eps > 1) throw InvalidRangeError("eps must lie in [0, 1]");
    const BigInt den_big = boost::multiprecision::denominator(eps);
    if (den_big > std::numeric_limits<std::uint64_t>::max())
        throw TooLargeError("eps denominator too large for simulation");
    const std::uint64_t eps_den = den_big.convert_to<std::uint64_t>();
    const std::uint64_t eps_num = boost::multiprecision::numerator(eps).convert_to<std::uint64_t>();
    const std::uint32_t q = field->order();

    Tally total(k);
    std::mutex mutex;
    parallel_chunks(trials, [&](std::uint64_t begin, std::uint64_t end) {
        Tally local(k);
        GFMatrix m(field, n_t, k);
        for (std::uint64_t t = begin; t < end; ++t) {
            CounterRng rng(seed, t);
            long received = 0;
            for (long p = 0; p < n_t; ++p) {
                if (rng.bernoulli(eps_num, eps_den)) continue;  // erased
                Element* row = m.row(received);
                if (mode == Mode::Systematic && p < k) {
                    std::fill(row, row + k, 0);
                    row[p] = 1;
                } else {
                    for (long c = 0; c < k; ++c) row[c] = rng.next_element(q);
                }
                ++received;
            }
            for (long r = received; r < n_t; ++r) {
                Element* row = m.row(r);
                std::fill(row, row + k, 0);  // padding rows do not affect rank or |X|
            }
            const long rank = rref_in_place(m);
            ++local.exact_x[static_cast<std::size_t>(count_unit_rows(m, rank))];
            ++local.rank[static_cast<std::size_t>(rank)];
        }
        local.merge_into(total, mutex);
    });
    return finish_report(mode == Mode::Systematic ? "erasure-sys" : "erasure-ns", field, k, n_t,
                         -1, eps, trials, seed, total);
}

namespace {

// Base-q odometer over `width` digits; returns false after the last value.
bool advance(std::vector<Element>& digits, std::uint32_t q) {
    for (auto& d : digits) {
        if (++d < q) return true;
        d = 0;
    }
    return false;
}

}  // namespace

Rational ExhaustiveNsReport::atleast_given_rank(long r, long x) const {
    const auto& row = joint_count.at(static_cast<std::size_t>(r));
    std::uint64_t rank_total = 0, hits = 0;
    for (std::size_t xx = 0; xx < row.size(); ++xx) {
        rank_total += row[xx];
        if (static_cast<long>(xx) >= x) hits += row[xx];
    }
    if (rank_total == 0) throw InvalidRangeError("rank never occurred in the enumeration");
    return Rational(hits, rank_total);
}

Rational ExhaustiveNsReport::rank_probability(long r) const {
    const auto& row = joint_count.at(static_cast<std::size_t>(r));
    const std::uint64_t hits = std::accumulate(row.begin(), row.end(), std::uint64_t{0});
    return Rational(hits, total);
}

ExhaustiveNsReport exhaustive_oracle_ns(const std::shared_ptr<const Field>& field, long k, long n) {
    if (!field) throw InvalidRangeError("oracle needs a field");
    if (k < 1 || n < 0) throw InvalidRangeError("bad dimensions");
    const std::uint32_t q = field->order();
    const BigInt total_big = int_pow(q, static_cast<unsigned long>(n) * k);
    if (total_big > (BigInt(1) << 24)) throw TooLargeError("q^(nk) exceeds the 2^24 enumeration guard");
    const std::uint64_t total = total_big.convert_to<std::uint64_t>();

    ExhaustiveNsReport rep;
    rep.total = total;
    rep.joint_count.assign(static_cast<std::size_t>(std::min(n, k)) + 1,
                           std::vector<std::uint64_t>(static_cast<std::size_t>(k) + 1, 0));

    std::vector<Element> entries(static_cast<std::size_t>(n) * k, 0);
    GFMatrix m(field, n, k);
    std::uint64_t seen = 0;
    do {
        std::copy(entries.begin(), entries.end(), m.row(0));
        const long rank = rref_in_place(m);
        const long units = count_unit_rows(m, rank);
        ++rep.joint_count[static_cast<std::size_t>(rank)][static_cast<std::size_t>(units)];
        ++seen;
    } while (advance(entries, q) && n > 0);
    (void)seen;

    std::vector<std::uint64_t> atleast(static_cast<std::size_t>(k) + 1, 0);
    for (const auto& row : rep.joint_count)
        for (std::size_t x = 0; x < row.size(); ++x)
            for (std::size_t xx = 0; xx <= x; ++xx) atleast[xx] += row[x];

    rep.profile.mode = Mode::NonSystematic;
    rep.profile.q = q;
    rep.profile.k = k;
    rep.profile.n_t = -1;
    rep.profile.n = n;
    rep.profile.provenance = Provenance::Exhaustive;
    for (long x = 0; x <= k; ++x)
        rep.profile.at_least.emplace_back(atleast[static_cast<std::size_t>(x)], total);
    return rep;
}

DecodeProfile exhaustive_oracle_sys(const std::shared_ptr<const Field>& field, long k, long n_t,
                                    long n) {
    if (!field) throw InvalidRangeError("oracle needs a field");
    if (k < 1 || n_t < 1 || n < 0) throw InvalidRangeError("bad dimensions");
    if (n > n_t) throw ReceivedExceedsTransmittedError("n exceeds the number of transmitted packets");
    const std::uint32_t q = field->order();
    const BigInt subsets = binomial(n_t, n);
    if (subsets * int_pow(q, static_cast<unsigned long>(n) * k) > (BigInt(1) << 26))
        throw TooLargeError("C(n_t, n) * q^(nk) exceeds the 2^26 enumeration guard");

    std::vector<BigInt> exact_weighted(static_cast<std::size_t>(k) + 1, 0);

    // Combination odometer over the n received positions.
    std::vector<long> pos(static_cast<std::size_t>(n));
    std::iota(pos.begin(), pos.end(), 0L);
    GFMatrix m(field, n, k);
    bool more = true;
    while (more) {
        std::vector<long> coded;
        for (long p : pos)
            if (p >= k) coded.push_back(p);
        const long c = static_cast<long>(coded.size());
        const long h = n - c;

        std::vector<std::uint64_t> hist(static_cast<std::size_t>(k) + 1, 0);
        std::vector<Element> assignment(static_cast<std::size_t>(c) * k, 0);
        do {
            long ci = 0;
            for (long i = 0; i < n; ++i) {
                Element* row = m.row(i);
                const long p = pos[static_cast<std::size_t>(i)];
                if (p < k) {
                    std::fill(row, row + k, 0);
                    row[p] = 1;
                } else {
                    std::copy(assignment.begin() + ci * k, assignment.begin() + (ci + 1) * k, row);
                    ++ci;
                }
            }
            const long rank = rref_in_place(m);
            ++hist[static_cast<std::size_t>(count_unit_rows(m, rank))];
        } while (c > 0 && advance(assignment, q));

        // Each enumerated assignment carries weight q^(hk) over the common
        // denominator C(n_t, n) * q^(nk).
        const BigInt weight = int_pow(q, static_cast<unsigned long>(h) * k);
        for (std::size_t x = 0; x < hist.size(); ++x)
            if (hist[x]) exact_weighted[x] += BigInt(hist[x]) * weight;

        // Next n-combination of {0, ..., n_t - 1} in lexicographic order.
        more = false;
        for (long i = n - 1; i >= 0; --i) {
            if (pos[static_cast<std::size_t>(i)] < n_t - (n - i)) {
                ++pos[static_cast<std::size_t>(i)];
                for (long j = i + 1; j < n; ++j)
                    pos[static_cast<std::size_t>(j)] = pos[static_cast<std::size_t>(j - 1)] + 1;
                more = true;
                break;
            }
        }
        if (n == 0) more = false;
    }

    const BigInt den = subsets * int_pow(q, static_cast<unsigned long>(n) * k);
    DecodeProfile prof;
    prof.mode = Mode::Systematic;
    prof.q = q;
    prof.k = k;
    prof.n_t = n_t;
    prof.n = n;
    prof.provenance = Provenance::Exhaustive;
    BigInt acc = 0;
    std::vector<Rational> at_least(static_cast<std::size_t>(k) + 1);
    for (long x = k; x >= 0; --x) {
        acc += exact_weighted[static_cast<std::size_t>(x)];
        at_least[static_cast<std::size_t>(x)] = Rational(acc, den);
    }
    prof.at_least = std::move(at_least);
    return prof;
}

}  // namespace rlnc
