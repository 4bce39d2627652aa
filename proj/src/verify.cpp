#include "morphic/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "morphic/archimedean.hpp"
#include "morphic/dynatomic.hpp"
#include "morphic/errors.hpp"
#include "morphic/gallery.hpp"
#include "morphic/padic.hpp"
#include "morphic/properties.hpp"
#include "morphic/rootfinder.hpp"

namespace morphic {

VerifyScale parse_verify_scale(std::string_view name) {
    if (name == "quick") return VerifyScale::quick;
    if (name == "full") return VerifyScale::full;
    throw InputError("unknown verify scale '" + std::string(name) + "' (expected quick or full)");
}

bool VerifyReport::passed() const {
    return !criteria.empty() && std::all_of(criteria.begin(), criteria.end(), [](const auto& c) { return c.passed; });
}

std::string VerifyReport::str() const {
    std::ostringstream os;
    for (const auto& c : criteria) {
        char t[32];
        std::snprintf(t, sizeof t, "%.2fs", c.seconds);
        os << "criterion " << c.id << ": " << (c.passed ? "PASS" : "FAIL") << "  " << c.title << "\n"
           << "    expected:  " << c.expected << "\n"
           << "    observed:  " << c.observed << "\n"
           << "    tolerance: " << c.tolerance << "\n"
           << "    time:      " << t << "\n";
    }
    os << (passed() ? "all criteria passed" : "some criteria failed") << "\n";
    return os.str();
}

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string set_string(const std::vector<unsigned>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

class Stopwatch {
public:
    double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count(); }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

CriterionReport make_report(unsigned id, std::string title) {
    CriterionReport r;
    r.id = id;
    r.title = std::move(title);
    return r;
}

Polynomial poly(std::initializer_list<long> c) {
    std::vector<Rational> v;
    for (long x : c) v.emplace_back(x);
    return Polynomial(std::move(v));
}

CriterionReport power_map_jensen(VerifyScale scale, double ts) {
    CriterionReport r = make_report(1, "power map z^2: periodic sums and iterate limit against log+|q|");
    Stopwatch sw;
    const Polynomial f = build_gallery(GalleryKind::power, 2);
    const std::vector<ComplexRational> points{{Rational(3)}, {Rational(5, 2)}, {Rational(1), Rational(1)}};
    std::vector<unsigned> depths{10};
    if (scale == VerifyScale::full) depths.push_back(12);
    double ps_err = 0.0;
    for (unsigned n : depths) {
        const RootSet roots = find_periodic_points(f, n);
        for (const auto& q : points) {
            const double exact = power_map_height(2, q.to_complex()).value;
            ps_err = std::max(ps_err, std::fabs(height_periodic_sum(f, q, n, roots).value - exact));
        }
    }
    double it_err = 0.0;
    for (const auto& q : points) {
        it_err = std::max(it_err, std::fabs(height_iterate(f, q.to_complex()).value - power_map_height(2, q.to_complex()).value));
    }
    r.seconds = sw.seconds();
    r.expected = "periodic sum at n=" + set_string(depths) + " and iterate equal log+|q| for q in {3, 5/2, 1+i}";
    r.observed = "max periodic-sum error " + fmt(ps_err) + ", max iterate error " + fmt(it_err) + ", " +
                 fmt(r.seconds) + " s";
    r.tolerance = "periodic sum " + fmt(5e-3 * ts) + ", iterate " + fmt(1e-9 * ts) + ", runtime " + fmt(60 * ts) + " s";
    r.passed = ps_err <= 5e-3 * ts && it_err <= 1e-9 * ts && r.seconds <= 60 * ts;
    return r;
}

CriterionReport decomposition_identity(VerifyScale, double ts) {
    CriterionReport r = make_report(2, "product decomposition of f^(n)(q) - q over periodic points");
    Stopwatch sw;
    std::mt19937_64 rng(20240607);
    auto pick = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
    double worst = 0.0;
    std::size_t checks = 0;
    for (int i = 0; i < 20; ++i) {
        const int d = i % 2 == 0 ? 2 : 3;
        std::vector<Rational> c;
        for (int k = 0; k < d; ++k) c.emplace_back(pick(-3, 3));
        long lead = 0;
        while (lead == 0) lead = pick(-3, 3);
        c.emplace_back(lead);
        const Polynomial f(c);
        const double radius = escape_radius(f);
        ComplexRational q;
        do {
            const double rho = radius * std::uniform_real_distribution<double>(1.05, 2.0)(rng);
            const double theta = std::uniform_real_distribution<double>(-std::numbers::pi, std::numbers::pi)(rng);
            q = {make_rational(Integer(std::lround(rho * std::cos(theta) * 16)), Integer(16)),
                 make_rational(Integer(std::lround(rho * std::sin(theta) * 16)), Integer(16))};
        } while (std::abs(q.to_complex()) <= radius);
        for (unsigned n = 1; n <= 6; ++n) {
            const IdentitySides s = periodic_sum_identity(f, q, n);
            worst = std::max(worst, std::fabs(s.lhs - s.rhs));
            ++checks;
        }
    }
    r.seconds = sw.seconds();
    r.expected = "both sides agree for 20 random quadratics/cubics, n = 1..6, |q| > escape radius";
    r.observed = std::to_string(checks) + " checks, max |lhs - rhs| = " + fmt(worst);
    r.tolerance = fmt(1e-8 * ts);
    r.passed = worst <= 1e-8 * ts;
    return r;
}

CriterionReport leading_term(VerifyScale, double ts) {
    CriterionReport r = make_report(3, "leading-coefficient term for T_2");
    Stopwatch sw;
    const Polynomial t2 = build_gallery(GalleryKind::chebyshev, 2);
    bool exact = true;
    bool monotone = true;
    double previous = -1.0;
    Rational previous_exact(-1);
    double last_gap = 1.0;
    for (unsigned n = 1; n <= 64; ++n) {
        const LeadingCoefficientPower lc = leading_coefficient_power(t2, n);
        const Rational expected = 1 - Rational(1) / power(Integer(2), n);
        exact = exact && lc.normalized_exponent() == expected;
        const double v = lc.normalized_log_magnitude();
        monotone = monotone && lc.normalized_exponent() > previous_exact && v >= previous;
        previous_exact = lc.normalized_exponent();
        previous = v;
        last_gap = std::fabs(v - std::log(2.0));
        if (n <= 6) exact = exact && iterate(t2, n).leading() == power(Rational(2), lc.exponent.get_ui());
    }
    r.seconds = sw.seconds();
    r.expected = "exponent/2^n == 1 - 2^-n exactly for n <= 64 (leading coefficients of T_2^(n) checked for n <= 6); exponent strictly increasing, value -> log 2";
    r.observed = std::string(exact ? "exact identity holds" : "exact identity FAILS") +
                 (monotone ? ", increasing" : ", not increasing") + ", |value(64) - log 2| = " + fmt(last_gap);
    r.tolerance = "limit gap " + fmt(1e-12 * ts);
    r.passed = exact && monotone && last_gap <= 1e-12 * ts;
    return r;
}

CriterionReport chebyshev_closed_form_check(VerifyScale, double ts) {
    CriterionReport r = make_report(4, "T_2 at q = 2 against log(2 + sqrt 3)");
    Stopwatch sw;
    const Polynomial t2 = build_gallery(GalleryKind::chebyshev, 2);
    const double exact = std::log(2.0 + std::sqrt(3.0));
    const double ps = height_periodic_sum(t2, ComplexRational(Rational(2)), 8).value;
    const MeasureSample sample = sample_maximal_measure(t2, 40, 10000, 1);
    const double bi = height_backward_integral(t2, {2.0, 0.0}, sample).value;
    r.seconds = sw.seconds();
    r.expected = "periodic sum (n=8) and backward integral (10^4 samples, depth 40) within tolerance of " + fmt(exact);
    r.observed = "periodic sum error " + fmt(std::fabs(ps - exact)) + ", integral error " + fmt(std::fabs(bi - exact)) +
                 ", " + fmt(r.seconds) + " s";
    r.tolerance = fmt(5e-2 * ts) + " each, runtime " + fmt(120 * ts) + " s";
    r.passed = std::fabs(ps - exact) <= 5e-2 * ts && std::fabs(bi - exact) <= 5e-2 * ts && r.seconds <= 120 * ts;
    return r;
}

CriterionReport pullback(VerifyScale, double ts) {
    CriterionReport r = make_report(5, "pullback invariance of the potential");
    Stopwatch sw;
    const std::vector<Polynomial> maps{poly({-2, 0, 1}), poly({-1, 0, 1}), poly({0, -1, 0, 1})};
    const std::vector<std::complex<double>> points{{3.0, 0.0}, {2.0, 1.0}};
    double worst = 0.0;
    for (const auto& f : maps) {
        const MeasureSample sample = sample_maximal_measure(f, 40, 10000, 1);
        for (const auto& q : points) {
            const PullbackSides s = pullback_invariance_check(f, q, sample);
            worst = std::max(worst, std::fabs(s.lhs - s.rhs));
        }
    }
    r.seconds = sw.seconds();
    r.expected = "potential at f(q) equals d times potential at q for x^2-2, x^2-1, x^3-x and q in {3, 2+i}";
    r.observed = "max |lhs - d*rhs| = " + fmt(worst);
    r.tolerance = fmt(5e-2 * ts);
    r.passed = worst <= 5e-2 * ts;
    return r;
}

struct PadicCase {
    Polynomial f;
    std::uint64_t p;
};

std::vector<PadicCase> padic_corpus() {
    return {{poly({1, 0, 1}), 3}, {poly({1, 0, 1}), 5}, {poly({-2, 0, 1}), 5}, {poly({1, 1, 0, 1}), 2}};
}

std::int64_t diophantine_constant(DiophantineReport* out = nullptr) {
    DiophantineReport rep = diophantine_bound_check(poly({1, 0, 1}), 5, Rational(2), 200, std::int64_t{2});
    if (out) *out = rep;
    return rep.c;
}

CriterionReport unit_region(VerifyScale, double) {
    CriterionReport r = make_report(6, "p-adic periodic sums on the unit disk obey (v_p(n) + C)/d^n");
    Stopwatch sw;
    const std::int64_t c = diophantine_constant();
    std::size_t checks = 0;
    std::size_t bound_failures = 0;
    std::size_t cross_failures = 0;
    std::string first;
    Rational largest_last(0);
    for (const auto& pc : padic_corpus()) {
        const unsigned d = static_cast<unsigned>(pc.f.degree());
        for (long qi : {0L, 1L, 2L}) {
            const Rational q(qi);
            const auto series = periodic_sum_padic_series(pc.f, pc.p, q, 200);
            for (unsigned n = 1; n <= 200; ++n) {
                const Rational bound = make_rational(Integer(valuation(Integer(n), pc.p).value() + c), power(Integer(d), n));
                const Rational value = series[n - 1].value_in_valuation_units;
                ++checks;
                if (abs(value) > bound) {
                    ++bound_failures;
                    if (first.empty()) first = pc.f.to_string() + " p=" + std::to_string(pc.p) + " q=" + std::to_string(qi) + " n=" + std::to_string(n);
                }
                if (std::pow(d, n) <= 256.0) {
                    const PadicHeightResult lit = periodic_sum_padic_by_division(pc.f, pc.p, q, n);
                    if (lit.value_in_valuation_units != value) ++cross_failures;
                }
            }
            largest_last = std::max(largest_last, Rational(abs(series.back().value_in_valuation_units)));
        }
    }
    r.seconds = sw.seconds();
    r.expected = "|value(n)| <= (v_p(n) + C)/d^n for n <= 200 with C = " + std::to_string(c) +
                 " from the Diophantine check; literal deflation agrees for d^n <= 256; value -> 0";
    r.observed = std::to_string(checks) + " checks, " + std::to_string(bound_failures) + " bound failures" +
                 (first.empty() ? "" : " (first " + first + ")") + ", " + std::to_string(cross_failures) +
                 " cross-check mismatches, max |value(200)| = " + fmt(largest_last.get_d());
    r.tolerance = "exact rational comparison";
    r.passed = bound_failures == 0 && cross_failures == 0 && c <= 2;
    return r;
}

CriterionReport polar_region(VerifyScale, double) {
    CriterionReport r = make_report(7, "p-adic periodic sums off the unit disk equal -v_p(q) exactly");
    Stopwatch sw;
    std::size_t checks = 0;
    std::size_t failures = 0;
    for (const auto& pc : padic_corpus()) {
        const unsigned d = static_cast<unsigned>(pc.f.degree());
        const Rational pr(static_cast<unsigned long>(pc.p));
        for (const Rational& q : {Rational(1 / pr), Rational(2 / (pr * pr))}) {
            const Rational expected(-valuation(q, pc.p).value());
            const auto series = periodic_sum_padic_series(pc.f, pc.p, q, 10);
            Rational x = q;
            for (unsigned n = 1; n <= 10; ++n) {
                x = pc.f(x);
                const Integer vb = leading_coefficient_power(pc.f, n).valuation(pc.p);
                const Rational literal = make_rational(vb - valuation(Rational(x - q), pc.p).value(), power(Integer(d), n));
                checks += 2;
                if (series[n - 1].value_in_valuation_units != expected) ++failures;
                if (literal != expected) ++failures;
            }
        }
    }
    r.seconds = sw.seconds();
    r.expected = "value(n) == -v_p(q) for q in {1/p, 2/p^2}, n <= 10, both from the orbit routine and from exact f^(n)(q) - q";
    r.observed = std::to_string(checks) + " comparisons, " + std::to_string(failures) + " mismatches";
    r.tolerance = "exact rational equality";
    r.passed = failures == 0;
    return r;
}

CriterionReport diophantine(VerifyScale, double ts) {
    CriterionReport r = make_report(8, "Diophantine bound for x^2 + 1 at p = 5, q = 2");
    Stopwatch sw;
    DiophantineReport rep;
    const std::int64_t c = diophantine_constant(&rep);
    const Polynomial f = poly({1, 0, 1});
    const Rational f3 = f(f(f(Rational(2)))) - 2;
    const Valuation v3 = valuation(f3, 5);
    r.seconds = sw.seconds();
    r.expected = "C <= 2, no violations of C = 2 for n <= 200, v_5(f^(3)(2) - 2) = 2";
    r.observed = "C = " + std::to_string(c) + ", " + std::to_string(rep.violations.size()) + " violations, v_5 = " +
                 v3.to_string() + ", " + fmt(r.seconds) + " s";
    r.tolerance = "exact; runtime " + fmt(30 * ts) + " s";
    r.passed = c <= 2 && rep.violations.empty() && v3 == Valuation(2) && rep.valuations.size() >= 3 &&
               rep.valuations[2] == 2 && r.seconds <= 30 * ts;
    return r;
}

CriterionReport essential(VerifyScale, double) {
    CriterionReport r = make_report(9, "essential periods over prime fields");
    Stopwatch sw;
    struct Case {
        FpPolynomial f;
        std::uint64_t xi;
        unsigned n_max;
        std::vector<unsigned> expected;
    };
    const std::vector<Case> cases{{FpPolynomial(3, {1, 0, 1}), 2, 10, {1, 3, 9}}, {FpPolynomial(5, {0, 0, 1}), 1, 5, {1, 4}}};
    bool ok = true;
    std::string observed;
    for (const auto& c : cases) {
        const auto obs = essential_periods_observed(c.f, c.xi, c.n_max);
        const unsigned m = *least_period(c.f, c.xi);
        const auto order = multiplier_order(multiplier(c.f, c.xi, m), c.f.field());
        const auto pred = essential_periods_predicted(m, order, c.f.prime()).up_to(c.n_max);
        ok = ok && obs == c.expected && pred == obs;
        if (!observed.empty()) observed += "; ";
        observed += c.f.to_string() + " over F_" + std::to_string(c.f.prime()) + " at " + std::to_string(c.xi) +
                    ": observed " + set_string(obs) + ", predicted " + set_string(pred);
    }
    r.seconds = sw.seconds();
    r.expected = "x^2+1 over F_3 at 2 (n <= 10): {1,3,9}; x^2 over F_5 at 1 (n <= 5): {1,4}; prediction agrees";
    r.observed = observed;
    r.tolerance = "exact";
    r.passed = ok;
    return r;
}

CriterionReport small_points(VerifyScale, double) {
    CriterionReport r = make_report(10, "small periodic points near 0 for x^2 + x/2 at p = 2");
    Stopwatch sw;
    const Polynomial f{Rational(0), Rational(1, 2), Rational(1)};
    const auto records = small_periodic_valuations(f, 2, Rational(0), 1, 6);
    bool slopes = records.size() == 6;
    std::string observed = "min slopes:";
    for (const auto& rec : records) {
        slopes = slopes && rec.min_slope == Rational(2 - static_cast<long>(rec.k));
        observed += " " + format_rational_short(rec.min_slope);
    }
    const std::vector<NewtonPoint> k2_support{{0, -2}, {1, -2}, {2, 0}, {3, 0}};
    bool k2 = records.size() >= 2 && records[1].polygon.points == k2_support;
    bool k3 = false;
    if (records.size() >= 3) {
        const auto& v = records[2].polygon.vertices;
        const auto has = [&](NewtonPoint pt) { return std::find(v.begin(), v.end(), pt) != v.end(); };
        k3 = has({0, -3}) && has({1, -4}) && records[2].polygon.segments.front().slope == Rational(-1);
    }
    r.seconds = sw.seconds();
    r.expected = "min slope 2 - k for k = 1..6; k = 2 support (0,-2),(1,-2),(2,0),(3,0); k = 3 hull through (0,-3),(1,-4) "
                 "(indices after dividing by x)";
    r.observed = observed + (k2 ? "; k = 2 support matches" : "; k = 2 support differs") +
                 (k3 ? "; k = 3 hull matches" : "; k = 3 hull differs");
    r.tolerance = "exact";
    r.passed = slopes && k2 && k3;
    return r;
}

CriterionReport unit_product(VerifyScale, double) {
    CriterionReport r = make_report(11, "unit-product quotient at 0");
    Stopwatch sw;
    const UnitProductResult a = unit_product_check(poly({0, 1, 1, 1}), 2, 1);
    const UnitProductResult b = unit_product_check(poly({0, 3, 0, 1}), 3, 1);
    r.seconds = sw.seconds();
    r.expected = "x + x^2 + x^3 at p = 2: valuation 1; x^3 + 3x at p = 3: valuation 0";
    r.observed = "constants " + format_rational(a.constant) + " and " + format_rational(b.constant) + ", valuations " +
                 a.valuation.to_string() + " and " + b.valuation.to_string();
    r.tolerance = "exact";
    r.passed = a.valuation == Valuation(1) && b.valuation == Valuation(0);
    return r;
}

CriterionReport worked_example(VerifyScale, double) {
    CriterionReport r = make_report(12, "period-two quotient for x^2 - (1 + a)x with a = 4");
    Stopwatch sw;
    const Polynomial f = poly({0, -5, 1});
    const DivisionResult qr = divide(periodic_polynomial(f, 2), periodic_polynomial(f, 1));
    const Rational constant = qr.quotient.coeff(0);
    r.seconds = sw.seconds();
    r.expected = "exact division with constant term -4";
    r.observed = std::string(qr.remainder.is_zero() ? "exact" : "inexact") + ", quotient " + qr.quotient.to_string();
    r.tolerance = "exact";
    r.passed = qr.remainder.is_zero() && constant == -4;
    return r;
}

CriterionReport property_suites(VerifyScale, double ts) {
    CriterionReport r = make_report(13, "randomized property suites");
    Stopwatch sw;
    PropertyOptions opts;
    opts.cases = 200;
    const auto results = run_property_suites(opts);
    std::size_t failed = 0;
    std::string names;
    std::size_t min_cases = results.empty() ? 0 : results.front().cases;
    for (const auto& p : results) {
        min_cases = std::min(min_cases, p.cases);
        if (!p.passed()) {
            ++failed;
            names += " " + p.module + "/" + p.name + " (" + p.first_failure + ")";
        }
    }
    r.seconds = sw.seconds();
    r.expected = "every property green with >= 200 cases, total <= 300 s";
    r.observed = std::to_string(results.size()) + " properties, " + std::to_string(failed) + " failing" + names +
                 ", min cases " + std::to_string(min_cases) + ", " + fmt(r.seconds) + " s";
    r.tolerance = "runtime " + fmt(300 * ts) + " s";
    r.passed = failed == 0 && min_cases >= 200 && r.seconds <= 300 * ts;
    return r;
}

}  // namespace

CriterionReport run_criterion(unsigned id, VerifyScale scale, double ts) {
    using Fn = CriterionReport (*)(VerifyScale, double);
    static const Fn table[] = {power_map_jensen, decomposition_identity, leading_term, chebyshev_closed_form_check,
                               pullback, unit_region, polar_region, diophantine, essential, small_points,
                               unit_product, worked_example, property_suites};
    if (id < 1 || id > kCriterionCount) throw InputError("criterion id must lie in 1.." + std::to_string(kCriterionCount));
    try {
        return table[id - 1](scale, ts);
    } catch (const std::exception& e) {
        CriterionReport r;
        r.id = id;
        r.title = "criterion raised an error";
        r.observed = e.what();
        r.passed = false;
        return r;
    }
}

VerifyReport run_verify_suite(VerifyScale scale, double ts) {
    VerifyReport out;
    for (unsigned id = 1; id <= kCriterionCount; ++id) out.criteria.push_back(run_criterion(id, scale, ts));
    return out;
}

}  // namespace morphic
