#include "rlnc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "rlnc/channel.hpp"
#include "rlnc/errors.hpp"
#include "rlnc/gf.hpp"
#include "rlnc/partial.hpp"
#include "rlnc/qcombin.hpp"
#include "rlnc/rankstats.hpp"
#include "rlnc/simulator.hpp"

namespace rlnc {

namespace {

// ---------------------------------------------------------------------------
// argument parsing helpers

long require_prime_power(long q) {
    if (q < 2 || !prime_power_split(static_cast<std::uint64_t>(q)))
        throw InvalidRangeError("q=" + std::to_string(q) + " is not a prime power");
    return q;
}

std::vector<long> parse_x_list(const std::string& text, long k) {
    std::vector<long> xs;
    if (text.empty()) {
        for (long x = 0; x <= k; ++x) xs.push_back(x);
        return xs;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw InvalidRangeError("empty entry in x list");
        std::size_t pos = 0;
        const long x = std::stol(item, &pos);
        if (pos != item.size()) throw InvalidRangeError("bad x value '" + item + "'");
        if (x < 0 || x > k) throw InvalidRangeError("x=" + item + " outside [0, k]");
        xs.push_back(x);
    }
    if (xs.empty()) throw InvalidRangeError("empty x list");
    return xs;
}

std::pair<long, long> parse_span(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const long v = std::stol(text);
            return {v, v};
        }
        const long lo = std::stol(text.substr(0, colon));
        const long hi = std::stol(text.substr(colon + 1));
        if (hi < lo) throw InvalidRangeError("descending range '" + text + "'");
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw InvalidRangeError("bad range '" + text + "' (expected a or a:b)");
    }
}

std::vector<std::uint32_t> parse_modulus(const std::string& text) {
    std::vector<std::uint32_t> coeffs;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const long c = std::stol(item);
        if (c < 0) throw InvalidRangeError("negative modulus coefficient");
        coeffs.push_back(static_cast<std::uint32_t>(c));
    }
    if (coeffs.empty()) throw InvalidRangeError("empty modulus");
    return coeffs;
}

std::shared_ptr<const Field> make_field(long q, const std::string& modulus_text) {
    require_prime_power(q);
    const auto pm = prime_power_split(static_cast<std::uint64_t>(q));
    if (modulus_text.empty()) return std::make_shared<const Field>(pm->first, pm->second);
    return std::make_shared<const Field>(pm->first, pm->second, parse_modulus(modulus_text));
}

Rational parse_eps(const std::string& text) {
    const Rational eps = parse_rational(text);
    if (eps < 0 || eps > 1) throw InvalidRangeError("eps must lie in [0, 1]");
    return eps;
}

// ---------------------------------------------------------------------------
// output emission

struct NamedSvg {
    std::string name;  // inserted into the file name for multi-chart output
    std::string body;
};

struct Outputs {
    std::string csv;
    std::vector<NamedSvg> svgs;
};

bool write_file(const std::string& path, const std::string& content, std::ostream& err) {
    std::ofstream f(path);
    if (!f) {
        err << "error: cannot open '" << path << "' for writing\n";
        return false;
    }
    f << content;
    return f.good();
}

int emit(const Outputs& outputs, const std::string& format, const std::string& out_path,
         std::ostream& out, std::ostream& err) {
    const bool want_csv = format == "csv" || format == "both";
    const bool want_svg = format == "svg" || format == "both";
    if (!want_csv && !want_svg) {
        err << "error: unknown format '" << format << "' (expected csv, svg or both)\n";
        return 2;
    }
    if (want_svg && outputs.svgs.empty()) {
        err << "error: this subcommand has no SVG output\n";
        return 2;
    }
    if (want_svg && out_path.empty() && (format == "both" || outputs.svgs.size() > 1)) {
        err << "error: --out is required for this output format\n";
        return 2;
    }

    if (want_csv) {
        if (out_path.empty()) {
            out << outputs.csv;
        } else {
            const std::string path = format == "both" ? out_path + ".csv" : out_path;
            if (!write_file(path, outputs.csv, err)) return 2;
        }
    }
    if (want_svg) {
        if (out_path.empty()) {
            out << outputs.svgs.front().body;
        } else {
            for (const auto& svg : outputs.svgs) {
                std::string path = out_path;
                if (!svg.name.empty()) path += "-" + svg.name;
                if (format == "both" || outputs.svgs.size() > 1 || !svg.name.empty()) path += ".svg";
                if (!write_file(path, svg.body, err)) return 2;
            }
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// minimal SVG line charts (CSV is the contract; this is a convenience)

struct Series {
    std::string label;
    bool dashed = false;
    std::vector<std::pair<double, double>> points;  // (x, probability)
};

std::string fmt2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::vector<Series>& series, double xmin, double xmax) {
    constexpr double kW = 760, kH = 500, kL = 64, kR = 18, kT = 42, kB = 52;
    const double pw = kW - kL - kR;
    const double ph = kH - kT - kB;
    if (xmax <= xmin) xmax = xmin + 1;
    const auto sx = [&](double x) { return kL + (x - xmin) / (xmax - xmin) * pw; };
    const auto sy = [&](double y) { return kT + (1.0 - y) * ph; };
    static const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                     "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
        << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    svg << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << kW / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">"
        << title << "</text>\n";
    // axes
    svg << "<line x1=\"" << kL << "\" y1=\"" << sy(0) << "\" x2=\"" << kL + pw << "\" y2=\"" << sy(0)
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kL << "\" y1=\"" << sy(0) << "\" x2=\"" << kL << "\" y2=\"" << sy(1)
        << "\" stroke=\"black\"/>\n";
    // y ticks every 0.2
    for (int i = 0; i <= 5; ++i) {
        const double y = i / 5.0;
        svg << "<line x1=\"" << kL - 4 << "\" y1=\"" << sy(y) << "\" x2=\"" << kL << "\" y2=\"" << sy(y)
            << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kL - 8 << "\" y=\"" << sy(y) + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt2(y)
            << "</text>\n";
    }
    // x ticks: integer steps
    const long step = std::max(1L, std::lround((xmax - xmin) / 8.0));
    for (long x = std::lround(xmin); x <= std::lround(xmax); x += step) {
        svg << "<line x1=\"" << sx(x) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(x) << "\" y2=\""
            << sy(0) + 4 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << sx(x) << "\" y=\"" << sy(0) + 18
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << x
            << "</text>\n";
    }
    svg << "<text x=\"" << kL + pw / 2 << "\" y=\"" << kH - 12
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
        << "</text>\n";
    svg << "<text x=\"16\" y=\"" << kT + ph / 2
        << "\" transform=\"rotate(-90 16 " << kT + ph / 2
        << ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">probability</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& sr = series[s];
        if (sr.points.empty()) continue;
        svg << "<polyline fill=\"none\" stroke=\"" << kPalette[s % 8] << "\" stroke-width=\"1.5\"";
        if (sr.dashed) svg << " stroke-dasharray=\"6 4\"";
        svg << " points=\"";
        for (const auto& [x, y] : sr.points) svg << fmt2(sx(x)) << ',' << fmt2(sy(y)) << ' ';
        svg << "\"/>\n";
    }
    // legend
    for (std::size_t s = 0; s < series.size(); ++s) {
        const double ly = kT + 14 + 15 * static_cast<double>(s);
        svg << "<line x1=\"" << kL + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << kL + 34 << "\" y2=\""
            << ly - 4 << "\" stroke=\"" << kPalette[s % 8] << "\" stroke-width=\"1.5\""
            << (series[s].dashed ? " stroke-dasharray=\"6 4\"" : "") << "/>\n";
        svg << "<text x=\"" << kL + 40 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[s].label << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

// ---------------------------------------------------------------------------
// subcommand bodies

struct CommonOpts {
    long q = 0;
    long k = 0;
    long n = -1;
    std::string nt;
    std::string eps;
    std::string xs;
    std::string mode = "ns";
    std::string modulus;
    std::uint64_t trials = 60000;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string format = "csv";
    int precision = 12;
};

int cmd_rank_dist(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    require_prime_power(o.q);
    if (o.format != "csv") throw InvalidRangeError("rank-dist only emits CSV");
    const RankPmf pmf = rank_pmf(static_cast<std::uint32_t>(o.q), o.k, o.n);
    std::ostringstream csv;
    csv << "q,k,n,r,prob_exact,prob_float\n";
    for (long r = 0; r <= pmf.max_rank(); ++r) {
        const Rational& p = pmf.probabilities[static_cast<std::size_t>(r)];
        csv << o.q << ',' << o.k << ',' << o.n << ',' << r << ',' << p << ','
            << to_decimal_string(p, o.precision) << '\n';
    }
    return emit({csv.str(), {}}, o.format, o.out_path, out, err);
}

int cmd_partial(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    require_prime_power(o.q);
    if (o.format != "csv") throw InvalidRangeError("partial only emits CSV");
    const Mode mode = parse_mode(o.mode);
    if (mode == Mode::NonSystematic && !o.nt.empty())
        throw InvalidRangeError("--nt does not apply to non-systematic mode");
    if (mode == Mode::Systematic && o.nt.empty())
        throw InvalidRangeError("systematic mode requires --nt");
    if (o.n < 0) throw InvalidRangeError("--n is required");
    const std::uint32_t q = static_cast<std::uint32_t>(o.q);
    const long n_t = mode == Mode::Systematic ? parse_span(o.nt).first : -1;
    const std::vector<long> xs = parse_x_list(o.xs, o.k);

    std::ostringstream csv;
    csv << "mode,q,k,n_T,n,x,prob_exact,prob_float\n";
    for (long x : xs) {
        const Rational p = mode == Mode::NonSystematic
                               ? p_ns_atleast({q, o.k, o.n, x})
                               : p_sys_atleast({q, o.k, n_t, o.n, x});
        csv << mode_name(mode) << ',' << o.q << ',' << o.k << ',';
        if (mode == Mode::Systematic) csv << n_t;
        csv << ',' << o.n << ',' << x << ',' << p << ',' << to_decimal_string(p, o.precision) << '\n';
    }
    return emit({csv.str(), {}}, o.format, o.out_path, out, err);
}

int cmd_erasure_curve(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    require_prime_power(o.q);
    const Mode mode = parse_mode(o.mode);
    if (o.nt.empty()) throw InvalidRangeError("--nt (range a:b) is required");
    if (o.eps.empty()) throw InvalidRangeError("--eps is required");
    const auto [nt_lo, nt_hi] = parse_span(o.nt);
    const Rational eps = parse_eps(o.eps);
    const std::vector<long> xs = parse_x_list(o.xs, o.k);
    const std::uint32_t q = static_cast<std::uint32_t>(o.q);

    const auto points = erasure_curve(q, o.k, eps, mode, xs, nt_lo, nt_hi);

    std::ostringstream csv;
    csv << "mode,q,k,eps,n_T,x,prob_exact,prob_float\n";
    for (const auto& pt : points)
        csv << mode_name(mode) << ',' << o.q << ',' << o.k << ',' << eps << ',' << pt.n_t << ','
            << pt.x << ',' << pt.p << ',' << to_decimal_string(pt.p, o.precision) << '\n';

    Outputs outputs{csv.str(), {}};
    if (o.format != "csv") {
        std::vector<Series> series;
        for (std::size_t i = 0; i < xs.size(); ++i) series.push_back({"x=" + std::to_string(xs[i]), false, {}});
        for (const auto& pt : points) {
            const auto it = std::find(xs.begin(), xs.end(), pt.x);
            series[static_cast<std::size_t>(it - xs.begin())].points.emplace_back(
                static_cast<double>(pt.n_t), pt.p.convert_to<double>());
        }
        std::ostringstream title;
        title << "P(at least x of " << o.k << " packets) over erasure channel, q=" << o.q
              << ", eps=" << eps << ", " << mode_name(mode);
        outputs.svgs.push_back({"", render_line_chart(title.str(), "transmitted packets n_T", series,
                                                      static_cast<double>(nt_lo),
                                                      static_cast<double>(nt_hi))});
    }
    return emit(outputs, o.format, o.out_path, out, err);
}

struct SimPoint {
    long x;
    Rational empirical;
    Rational analytic;
    double se;
    std::string status;
};

std::string sim_status(const Rational& gap, double se) {
    const double g = gap.convert_to<double>();
    if (g > std::max(0.01, 4.0 * se)) return "fail";
    if (g > std::max(0.01, 3.0 * se)) return "flag";
    return "pass";
}

int cmd_simulate(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    if (o.format != "csv") throw InvalidRangeError("simulate only emits CSV");
    const Mode mode = parse_mode(o.mode);
    const auto field = make_field(o.q, o.modulus);
    const std::uint32_t q = field->order();
    const std::vector<long> xs = parse_x_list(o.xs, o.k);
    if (o.trials < 1) throw InvalidRangeError("--trials must be at least 1");

    TrialReport report;
    std::map<long, Rational> analytic;
    long n_t = -1;
    const bool erasure = !o.eps.empty();
    if (erasure) {
        if (o.nt.empty()) throw InvalidRangeError("erasure simulation requires --nt");
        if (o.n >= 0) throw InvalidRangeError("--n does not apply to erasure simulation");
        n_t = parse_span(o.nt).first;
        const Rational eps = parse_eps(o.eps);
        report = simulate_erasure(field, o.k, n_t, eps, mode, o.trials, o.seed);
        for (long x : xs) analytic[x] = p_erasure_atleast({q, o.k, n_t, eps, x, mode});
    } else if (mode == Mode::NonSystematic) {
        if (!o.nt.empty()) throw InvalidRangeError("--nt does not apply to non-systematic mode");
        if (o.n < 0) throw InvalidRangeError("--n is required");
        report = simulate_ns(field, o.k, o.n, o.trials, o.seed);
        for (long x : xs) analytic[x] = p_ns_atleast({q, o.k, o.n, x});
    } else {
        if (o.nt.empty()) throw InvalidRangeError("systematic mode requires --nt");
        if (o.n < 0) throw InvalidRangeError("--n is required");
        n_t = parse_span(o.nt).first;
        report = simulate_sys(field, o.k, n_t, o.n, o.trials, o.seed);
        for (long x : xs) analytic[x] = p_sys_atleast({q, o.k, n_t, o.n, x});
    }

    bool any_fail = false;
    std::ostringstream csv;
    csv << "mode,q,k,n_T,n,eps,trials,seed,x,empirical_exact,empirical_float,analytic_exact,"
           "analytic_float,abs_gap,se,status\n";
    for (long x : xs) {
        const Rational emp = report.frequency(x);
        const Rational& ana = analytic[x];
        const Rational gap = emp > ana ? Rational(emp - ana) : Rational(ana - emp);
        const double se = report.standard_error(x);
        const std::string status = sim_status(gap, se);
        if (status == "fail") any_fail = true;
        char se_buf[32];
        std::snprintf(se_buf, sizeof(se_buf), "%.6g", se);
        csv << mode_name(mode) << ',' << o.q << ',' << o.k << ',';
        if (n_t >= 0) csv << n_t;
        csv << ',';
        if (!erasure) csv << o.n;
        csv << ',';
        if (erasure) csv << parse_eps(o.eps);
        csv << ',' << o.trials << ',' << o.seed << ',' << x << ',' << emp << ','
            << to_decimal_string(emp, o.precision) << ',' << ana << ','
            << to_decimal_string(ana, o.precision) << ',' << to_decimal_string(gap, o.precision)
            << ',' << se_buf << ',' << status << '\n';
    }
    const int code = emit({csv.str(), {}}, o.format, o.out_path, out, err);
    if (code != 0) return code;
    return any_fail ? 3 : 0;
}

struct VerifyCase {
    bool sys;
    std::uint32_t q;
    long k, n, n_t;
};

int cmd_verify(const CommonOpts& o, std::ostream& out, std::ostream& err) {
    std::vector<VerifyCase> cases;
    if (o.q != 0 || o.k != 0 || o.n >= 0 || !o.nt.empty()) {
        if (o.q == 0 || o.k == 0 || o.n < 0)
            throw InvalidRangeError("a custom verify case needs --q, --k and --n (and --nt for systematic)");
        require_prime_power(o.q);
        const bool sys = !o.nt.empty();
        cases.push_back({sys, static_cast<std::uint32_t>(o.q), o.k, o.n,
                         sys ? parse_span(o.nt).first : -1});
    } else {
        for (std::uint32_t q : {2u, 3u})
            for (long k = 1; k <= 3; ++k)
                for (long n = 0; n <= 3; ++n) cases.push_back({false, q, k, n, -1});
        for (std::uint32_t q : {2u, 3u})
            for (long k = 1; k <= 3; ++k)
                for (long n_t = 1; n_t <= 4; ++n_t)
                    for (long n = 0; n <= n_t; ++n) cases.push_back({true, q, k, n, n_t});
    }

    std::uint64_t equalities = 0;
    for (const auto& c : cases) {
        const auto field = Field::of_order(c.q);
        if (c.sys) {
            const DecodeProfile oracle = exhaustive_oracle_sys(field, c.k, c.n_t, c.n);
            for (long x = 0; x <= c.k; ++x) {
                const Rational formula = p_sys_atleast({c.q, c.k, c.n_t, c.n, x});
                if (formula != oracle.at_least[static_cast<std::size_t>(x)]) {
                    out << "MISMATCH sys q=" << c.q << " k=" << c.k << " n_T=" << c.n_t
                        << " n=" << c.n << " x=" << x << ": oracle="
                        << oracle.at_least[static_cast<std::size_t>(x)] << " formula=" << formula
                        << '\n';
                    return 4;
                }
                ++equalities;
            }
            out << "ok sys q=" << c.q << " k=" << c.k << " n_T=" << c.n_t << " n=" << c.n << '\n';
        } else {
            const ExhaustiveNsReport oracle = exhaustive_oracle_ns(field, c.k, c.n);
            const RankPmf pmf = rank_pmf(c.q, c.k, c.n);
            for (long x = 0; x <= c.k; ++x) {
                const Rational formula = p_ns_atleast({c.q, c.k, c.n, x});
                if (formula != oracle.profile.at_least[static_cast<std::size_t>(x)]) {
                    out << "MISMATCH ns q=" << c.q << " k=" << c.k << " n=" << c.n << " x=" << x
                        << ": oracle=" << oracle.profile.at_least[static_cast<std::size_t>(x)]
                        << " formula=" << formula << '\n';
                    return 4;
                }
                ++equalities;
            }
            for (long r = 0; r <= pmf.max_rank(); ++r) {
                if (oracle.rank_probability(r) != pmf.probabilities[static_cast<std::size_t>(r)]) {
                    out << "MISMATCH rank-pmf q=" << c.q << " k=" << c.k << " n=" << c.n
                        << " r=" << r << ": oracle=" << oracle.rank_probability(r)
                        << " formula=" << pmf.probabilities[static_cast<std::size_t>(r)] << '\n';
                    return 4;
                }
                ++equalities;
                for (long x = 0; x <= r; ++x) {
                    const Rational cond = p_atleast_units_given_rank(c.q, c.k, r, x);
                    if (oracle.atleast_given_rank(r, x) != cond) {
                        out << "MISMATCH conditional q=" << c.q << " k=" << c.k << " n=" << c.n
                            << " r=" << r << " x=" << x
                            << ": oracle=" << oracle.atleast_given_rank(r, x) << " formula=" << cond
                            << '\n';
                        return 4;
                    }
                    ++equalities;
                }
            }
            out << "ok ns q=" << c.q << " k=" << c.k << " n=" << c.n << '\n';
        }
    }
    out << "all " << cases.size() << " cases exact-equal (" << equalities << " equalities)\n";
    (void)err;
    return 0;
}

int cmd_figure(const std::string& preset, const CommonOpts& o, std::ostream& out, std::ostream& err) {
    if (preset == "fig1") {
        constexpr std::uint32_t q = 2;
        constexpr long k = 20, n_t = 30;
        const std::vector<long> xs = {1, 5, 10, 20};
        const auto field = Field::of_order(q);

        std::vector<TrialReport> ns_reports, sys_reports;
        ns_reports.reserve(n_t);
        sys_reports.reserve(n_t);
        for (long n = 1; n <= n_t; ++n) {
            ns_reports.push_back(simulate_ns(field, k, n, o.trials, o.seed));
            sys_reports.push_back(simulate_sys(field, k, n_t, n, o.trials, o.seed));
        }

        std::ostringstream csv;
        csv << "preset,mode,kind,q,k,n_T,n,x,trials,seed,prob_exact,prob_float\n";
        std::vector<Series> series;
        for (Mode mode : {Mode::NonSystematic, Mode::Systematic}) {
            for (const char* kind : {"analytic", "simulated"}) {
                const bool analytic = kind[0] == 'a';
                for (long x : xs) {
                    Series sr;
                    sr.label = std::string(mode_name(mode)) + " x=" + std::to_string(x) +
                               (analytic ? "" : " (sim)");
                    sr.dashed = !analytic;
                    for (long n = 1; n <= n_t; ++n) {
                        Rational p;
                        if (analytic) {
                            p = mode == Mode::NonSystematic
                                    ? p_ns_atleast({q, k, n, x})
                                    : p_sys_atleast({q, k, n_t, n, x});
                        } else {
                            const auto& rep = mode == Mode::NonSystematic
                                                  ? ns_reports[static_cast<std::size_t>(n - 1)]
                                                  : sys_reports[static_cast<std::size_t>(n - 1)];
                            p = rep.frequency(x);
                        }
                        csv << preset << ',' << mode_name(mode) << ',' << kind << ',' << q << ','
                            << k << ',';
                        if (mode == Mode::Systematic) csv << n_t;
                        csv << ',' << n << ',' << x << ',';
                        if (!analytic) csv << o.trials << ',' << o.seed;
                        else csv << ',';
                        csv << ',' << p << ',' << to_decimal_string(p, o.precision) << '\n';
                        sr.points.emplace_back(static_cast<double>(n), p.convert_to<double>());
                    }
                    series.push_back(std::move(sr));
                }
            }
        }
        Outputs outputs{csv.str(), {}};
        if (o.format != "csv")
            outputs.svgs.push_back(
                {"", render_line_chart("P(at least x of 20 packets), q=2, n_T=30",
                                       "received packets n", series, 1, n_t)});
        return emit(outputs, o.format, o.out_path, out, err);
    }

    if (preset == "fig2") {
        const Rational eps(1, 5);
        struct Panel {
            Mode mode;
            std::uint32_t q;
            long k;
        };
        const std::vector<Panel> panels = {
            {Mode::NonSystematic, 2, 20}, {Mode::NonSystematic, 2, 30}, {Mode::NonSystematic, 8, 30},
            {Mode::Systematic, 2, 20},    {Mode::Systematic, 2, 30},    {Mode::Systematic, 8, 30},
        };
        std::ostringstream csv;
        csv << "preset,panel,mode,q,k,eps,n_T,x,prob_exact,prob_float\n";
        Outputs outputs;
        for (const auto& panel : panels) {
            const std::vector<long> xs = panel.k == 20 ? std::vector<long>{2, 4, 10, 16, 20}
                                                       : std::vector<long>{3, 6, 15, 24, 30};
            const long lo = *std::min_element(xs.begin(), xs.end());
            const long hi = 3 * panel.k;
            const std::string name = std::string(mode_name(panel.mode)) + "-q" +
                                     std::to_string(panel.q) + "-k" + std::to_string(panel.k);
            const auto points = erasure_curve(panel.q, panel.k, eps, panel.mode, xs, lo, hi);
            for (const auto& pt : points)
                csv << preset << ',' << name << ',' << mode_name(panel.mode) << ',' << panel.q << ','
                    << panel.k << ',' << eps << ',' << pt.n_t << ',' << pt.x << ',' << pt.p << ','
                    << to_decimal_string(pt.p, o.precision) << '\n';
            if (o.format != "csv") {
                std::vector<Series> series;
                for (long x : xs) series.push_back({"x=" + std::to_string(x), false, {}});
                for (const auto& pt : points) {
                    const auto it = std::find(xs.begin(), xs.end(), pt.x);
                    series[static_cast<std::size_t>(it - xs.begin())].points.emplace_back(
                        static_cast<double>(pt.n_t), pt.p.convert_to<double>());
                }
                outputs.svgs.push_back(
                    {name, render_line_chart("erasure channel eps=0.2, " + name,
                                             "transmitted packets n_T", series,
                                             static_cast<double>(lo), static_cast<double>(hi))});
            }
        }
        outputs.csv = csv.str();
        return emit(outputs, o.format, o.out_path, out, err);
    }

    err << "error: unknown figure preset '" << preset << "' (expected fig1 or fig2)\n";
    return 2;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact and simulated probabilities of partially decoding random linear network codes"};
    app.name("rlnc");

    CommonOpts o;
    std::string preset;

    auto add_output_opts = [&](CLI::App* cmd, bool with_svg) {
        cmd->add_option("--out", o.out_path, "output file path (default: stdout)");
        cmd->add_option("--format", o.format,
                        with_svg ? "csv, svg or both (default csv)" : "csv (default)");
        cmd->add_option("--precision", o.precision, "significant digits for float columns (default 12)");
    };

    auto* rank = app.add_subcommand("rank-dist", "exact rank distribution of a random n x k matrix");
    rank->add_option("--q", o.q, "field order (prime power)")->required();
    rank->add_option("--k", o.k, "source packets")->required();
    rank->add_option("--n", o.n, "received packets")->required();
    add_output_opts(rank, false);

    auto* partial = app.add_subcommand("partial", "exact P(at least x packets recoverable | n received)");
    partial->add_option("--q", o.q)->required();
    partial->add_option("--k", o.k)->required();
    partial->add_option("--n", o.n, "received packets");
    partial->add_option("--nt", o.nt, "transmitted packets (systematic mode)");
    partial->add_option("--x", o.xs, "recovery thresholds, comma separated (default 0..k)");
    partial->add_option("--mode", o.mode, "ns or sys (default ns)");
    add_output_opts(partial, false);

    auto* curve = app.add_subcommand("erasure-curve", "exact recovery curve over a Bernoulli erasure channel");
    curve->add_option("--q", o.q)->required();
    curve->add_option("--k", o.k)->required();
    curve->add_option("--eps", o.eps, "erasure probability (exact rational, e.g. 0.2 or 1/5)");
    curve->add_option("--x", o.xs, "recovery thresholds, comma separated (default 0..k)");
    curve->add_option("--nt", o.nt, "transmitted-packet range a:b (inclusive)");
    curve->add_option("--mode", o.mode, "ns or sys (default ns)");
    add_output_opts(curve, true);

    auto* sim = app.add_subcommand("simulate", "Monte Carlo run compared against the exact values");
    sim->add_option("--q", o.q)->required();
    sim->add_option("--k", o.k)->required();
    sim->add_option("--n", o.n, "received packets (ns/sys)");
    sim->add_option("--nt", o.nt, "transmitted packets (sys/erasure)");
    sim->add_option("--eps", o.eps, "erasure probability; presence selects the erasure simulator");
    sim->add_option("--x", o.xs, "thresholds to report (default 0..k)");
    sim->add_option("--mode", o.mode, "ns or sys (default ns)");
    sim->add_option("--modulus", o.modulus, "field modulus coefficients, lowest degree first");
    sim->add_option("--trials", o.trials, "number of trials (default 60000)");
    sim->add_option("--seed", o.seed, "RNG seed (default 1)");
    add_output_opts(sim, false);

    auto* verify = app.add_subcommand("verify", "exhaustive-enumeration check of the analytic formulas");
    verify->add_option("--q", o.q, "single-case override");
    verify->add_option("--k", o.k, "single-case override");
    verify->add_option("--n", o.n, "single-case override");
    verify->add_option("--nt", o.nt, "single-case override (makes the case systematic)");

    auto* figure = app.add_subcommand("figure", "reproduce a figure preset (fig1 or fig2)");
    figure->add_option("preset", preset, "fig1 or fig2")->required();
    figure->add_option("--trials", o.trials, "trials per simulated point (fig1, default 60000)");
    figure->add_option("--seed", o.seed, "RNG seed (fig1, default 1)");
    add_output_opts(figure, true);

    app.require_subcommand(1);

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (rank->parsed()) return cmd_rank_dist(o, out, err);
        if (partial->parsed()) return cmd_partial(o, out, err);
        if (curve->parsed()) return cmd_erasure_curve(o, out, err);
        if (sim->parsed()) return cmd_simulate(o, out, err);
        if (verify->parsed()) return cmd_verify(o, out, err);
        if (figure->parsed()) return cmd_figure(preset, o, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace rlnc
