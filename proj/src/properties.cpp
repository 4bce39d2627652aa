#include "morphic/properties.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "morphic/archimedean.hpp"
#include "morphic/dynatomic.hpp"
#include "morphic/errors.hpp"
#include "morphic/gallery.hpp"
#include "morphic/job.hpp"
#include "morphic/newton_polygon.hpp"
#include "morphic/padic.hpp"
#include "morphic/prime_power.hpp"
#include "morphic/rootfinder.hpp"

namespace morphic {

namespace {

using Rng = std::mt19937_64;
using Outcome = std::optional<std::string>;
using Check = std::function<Outcome(Rng&)>;

std::uint64_t name_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
    return h;
}

PropertyResult run_property(const std::string& module, const std::string& name, const PropertyOptions& options,
                            const Check& check) {
    PropertyResult out;
    out.module = module;
    out.name = name;
    std::seed_seq seq{options.seed, name_hash(module + "/" + name)};
    Rng rng(seq);
    const auto t0 = std::chrono::steady_clock::now();
    for (std::size_t i = 0; i < options.cases; ++i) {
        Outcome failure;
        try {
            failure = check(rng);
        } catch (const std::exception& e) {
            failure = std::string("exception: ") + e.what();
        }
        ++out.cases;
        if (failure) {
            ++out.failures;
            if (out.first_failure.empty()) out.first_failure = "case " + std::to_string(i) + ": " + *failure;
        }
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

long uniform(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

std::uint64_t small_prime(Rng& rng) {
    static const std::uint64_t primes[] = {2, 3, 5, 7};
    return primes[uniform(rng, 0, 3)];
}

Rational random_rational(Rng& rng, long num_bound, long den_bound) {
    return make_rational(Integer(uniform(rng, -num_bound, num_bound)), Integer(uniform(rng, 1, den_bound)));
}

Rational random_nonzero(Rng& rng, long num_bound, long den_bound) {
    Rational r;
    do {
        r = random_rational(rng, num_bound, den_bound);
    } while (r == 0);
    return r;
}

Polynomial random_polynomial(Rng& rng, int degree, long num_bound, long den_bound) {
    if (degree < 0) return {};
    std::vector<Rational> c;
    for (int i = 0; i < degree; ++i) c.push_back(random_rational(rng, num_bound, den_bound));
    c.push_back(random_nonzero(rng, num_bound, den_bound));
    return Polynomial(std::move(c));
}

// Integer not divisible by p.
long random_unit(Rng& rng, std::uint64_t p, long bound) {
    long u;
    do {
        u = uniform(rng, -bound, bound);
    } while (u == 0 || u % static_cast<long>(p) == 0);
    return u;
}

// A rational with nonnegative p-adic valuation.
Rational random_integral(Rng& rng, std::uint64_t p, long bound) {
    return make_rational(Integer(uniform(rng, -bound, bound)), Integer(std::labs(random_unit(rng, p, bound))));
}

// Good reduction at p: p-integral coefficients, unit leading coefficient.
Polynomial random_good(Rng& rng, std::uint64_t p, int degree, long bound) {
    std::vector<Rational> c;
    for (int i = 0; i < degree; ++i) c.push_back(random_integral(rng, p, bound));
    c.push_back(make_rational(Integer(random_unit(rng, p, 3)), Integer(std::labs(random_unit(rng, p, 3)))));
    return Polynomial(std::move(c));
}

Polynomial linear_factor(const Rational& xi) { return Polynomial{-xi, Rational(1)}; }

std::string show(const Polynomial& f) { return f.to_string(); }

template <typename T>
std::string str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

Rational exact_iterate(const Polynomial& f, Rational x, unsigned n) {
    for (unsigned k = 0; k < n; ++k) x = f(x);
    return x;
}

// ---------------------------------------------------------------- polynomial engine

Outcome iterate_compose(Rng& rng) {
    const Polynomial f = random_polynomial(rng, static_cast<int>(uniform(rng, 2, 3)), 3, 3);
    const unsigned m = static_cast<unsigned>(uniform(rng, 0, 2));
    const unsigned n = static_cast<unsigned>(uniform(rng, 0, 3 - static_cast<long>(m)));
    if (iterate(f, m + n) != compose(iterate(f, m), iterate(f, n))) {
        return "f = " + show(f) + ", m = " + std::to_string(m) + ", n = " + std::to_string(n);
    }
    return std::nullopt;
}

Outcome division_reconstruction(Rng& rng) {
    const Polynomial f = coin(rng, 0.05) ? Polynomial{} : random_polynomial(rng, static_cast<int>(uniform(rng, 0, 8)), 9, 5);
    const Polynomial g = random_polynomial(rng, static_cast<int>(uniform(rng, 0, 4)), 9, 5);
    const DivisionResult qr = divide(f, g);
    if (qr.quotient * g + qr.remainder != f) return "q*g + r != f for f = " + show(f) + ", g = " + show(g);
    if (!qr.remainder.is_zero() && qr.remainder.degree() >= g.degree()) return "remainder degree too large";
    return std::nullopt;
}

Outcome multiplicity_shift(Rng& rng) {
    const Rational xi = random_rational(rng, 5, 4);
    Polynomial f = random_polynomial(rng, static_cast<int>(uniform(rng, 0, 4)), 6, 3);
    const unsigned j = static_cast<unsigned>(uniform(rng, 0, 2));
    for (unsigned i = 0; i < j; ++i) f = f * linear_factor(xi);
    const unsigned k = static_cast<unsigned>(uniform(rng, 0, 4));
    Polynomial h = f;
    for (unsigned i = 0; i < k; ++i) h = h * linear_factor(xi);
    const unsigned base = root_multiplicity(f, xi);
    const unsigned shifted = root_multiplicity(h, xi);
    if (shifted != base + k) {
        return "f = " + show(f) + ", xi = " + format_rational(xi) + ": " + std::to_string(shifted) +
               " != " + std::to_string(base) + " + " + std::to_string(k);
    }
    return std::nullopt;
}

Outcome conjugation_round_trip(Rng& rng) {
    const Polynomial f = random_polynomial(rng, static_cast<int>(uniform(rng, 1, 5)), 7, 4);
    const Rational alpha = random_nonzero(rng, 6, 5);
    const Rational beta = random_rational(rng, 6, 5);
    const Polynomial g = conjugate_linear(conjugate_linear(f, alpha, beta), 1 / alpha, -beta / alpha);
    if (g != f) return "f = " + show(f) + ", alpha = " + format_rational(alpha) + ", beta = " + format_rational(beta);
    return std::nullopt;
}

Rational random_with_valuation(Rng& rng, std::uint64_t p) {
    if (coin(rng, 0.1)) return Rational(0);
    const long e = uniform(rng, -3, 3);
    Rational u = make_rational(Integer(random_unit(rng, p, 50)), Integer(std::labs(random_unit(rng, p, 50))));
    const Rational pe = power(Rational(static_cast<unsigned long>(p)), static_cast<std::uint64_t>(std::labs(e)));
    return e >= 0 ? Rational(u * pe) : Rational(u / pe);
}

Outcome valuation_axioms(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    const Rational a = random_with_valuation(rng, p);
    Rational b = random_with_valuation(rng, p);
    if (coin(rng, 0.2)) b = -a + random_with_valuation(rng, p) * static_cast<unsigned long>(p * p);
    const Valuation va = valuation(a, p);
    const Valuation vb = valuation(b, p);
    const std::string where = "p = " + std::to_string(p) + ", a = " + format_rational(a) + ", b = " + format_rational(b);
    if (valuation(Rational(a * b), p) != va + vb) return "v(ab) != v(a) + v(b), " + where;
    const Valuation vs = valuation(Rational(a + b), p);
    const Valuation lo = std::min(va, vb);
    if (vs < lo) return "v(a+b) < min, " + where;
    if (va != vb && vs != lo) return "v(a+b) != min for distinct valuations, " + where;
    return std::nullopt;
}

Outcome orbit_truncation(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    const int d = coin(rng, 0.7) ? 2 : 3;
    const Polynomial f = random_good(rng, p, d, 5);
    const Rational q = random_integral(rng, p, 6);
    const unsigned n_max = d == 2 ? 12 : 8;
    const unsigned k = static_cast<unsigned>(uniform(rng, 1, 40));
    const Integer modulus = power(Integer(static_cast<unsigned long>(p)), k);
    const PrimePowerOrbit orbit = orbit_mod_prime_power(f, q, p, n_max, k);
    const OrbitClass cls = classify_orbit(f, q, 2 * n_max);
    const unsigned period = cls.kind == OrbitKind::periodic ? cls.period : 0;
    const auto exact_vals = return_valuations(f, q, p, n_max, period);
    Rational x = q;
    for (unsigned n = 1; n <= n_max; ++n) {
        x = f(x);
        const std::string where = "f = " + show(f) + ", q = " + format_rational(q) + ", p = " + std::to_string(p) +
                                  ", K = " + std::to_string(k) + ", n = " + std::to_string(n);
        if (orbit.residues[n].residue != reduce_mod(x, modulus)) return "residue mismatch, " + where;
        const Valuation v = valuation(Rational(x - q), p);
        const TruncatedValuation& tv = orbit.return_valuations[n];
        const bool beyond = v.is_infinite() || v.value() >= static_cast<std::int64_t>(k);
        if (beyond != tv.at_least) return "truncation flag mismatch, " + where;
        if (!beyond && tv.value != v.value()) return "truncated valuation mismatch, " + where;
        if (!v.is_infinite() && (!exact_vals[n] || *exact_vals[n] != v.value())) {
            return "adaptive valuation mismatch, " + where;
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- root finder

BigComplex evaluate_big(const Polynomial& f, const BigComplex& z, mpfr_prec_t prec) {
    BigComplex acc(prec);
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) {
        acc = acc * z + BigComplex(BigFloat(*it, prec), BigFloat(prec));
    }
    return acc;
}

double horner_scale(const Polynomial& f, double r) {
    double s = 0.0;
    for (auto it = f.coeffs().rbegin(); it != f.coeffs().rend(); ++it) s = s * r + std::fabs(it->get_d());
    return s;
}

struct RootCase {
    Polynomial f;
    unsigned n = 0;  // 0: roots of f itself; otherwise periodic points of period n
    mpfr_prec_t prec = 128;
};

RootCase random_root_case(Rng& rng) {
    RootCase c;
    c.prec = coin(rng) ? 64 : 128;
    if (coin(rng, 0.25)) {
        c.f = random_polynomial(rng, 2, 3, 2);
        c.n = static_cast<unsigned>(uniform(rng, 1, 4));
    } else {
        c.f = random_polynomial(rng, static_cast<int>(uniform(rng, 1, 8)), 6, coin(rng, 0.7) ? 1 : 4);
    }
    return c;
}

RootSet solve(const RootCase& c) {
    return c.n == 0 ? find_roots(c.f, c.prec) : find_periodic_points(c.f, c.n, c.prec);
}

std::string describe(const RootCase& c) {
    return "f = " + show(c.f) + (c.n ? ", period " + std::to_string(c.n) : std::string()) + ", prec " +
           std::to_string(c.prec);
}

Outcome residual_certification(Rng& rng) {
    const RootCase c = random_root_case(rng);
    const RootSet rs = solve(c);
    const std::size_t expected = c.n == 0 ? static_cast<std::size_t>(c.f.degree())
                                          : static_cast<std::size_t>(std::pow(c.f.degree(), c.n));
    if (rs.roots.size() != expected) return "wrong root count, " + describe(c);
    for (const auto& r : rs.roots) {
        const mpfr_prec_t hi = 4 * r.precision_bits;
        BigComplex z = r.value();
        z.set_precision(hi);
        BigComplex v(hi);
        double scale = 0.0;
        if (c.n == 0) {
            v = evaluate_big(c.f, z, hi);
            scale = horner_scale(c.f, std::abs(z.to_complex()));
        } else {
            BigComplex x = z;
            double mag = std::abs(z.to_complex());
            for (unsigned k = 0; k < c.n; ++k) {
                x = evaluate_big(c.f, x, hi);
                mag = std::max(mag, horner_scale(c.f, std::abs(x.to_complex())));
            }
            v = x - z;
            scale = mag * static_cast<double>(c.n) * std::pow(std::fabs(c.f.leading().get_d()) + 1.0, c.n) + 1.0;
        }
        const BigFloat resid = v.abs();
        const BigFloat allowed =
            BigFloat(r.residual_bound, hi) + BigFloat(std::ldexp(scale, -static_cast<int>(2 * r.precision_bits - 16)), hi);
        if (resid > allowed) {
            return "residual " + str(resid.to_double()) + " exceeds bound " + str(r.residual_bound) + ", " + describe(c);
        }
    }
    return std::nullopt;
}

Outcome vieta(Rng& rng) {
    RootCase c = random_root_case(rng);
    c.n = 0;
    const RootSet rs = solve(c);
    const mpfr_prec_t prec = rs.roots.front().precision_bits;
    const int d = c.f.degree();
    BigComplex sum(prec);
    BigComplex product(BigFloat(1.0, prec), BigFloat(prec));
    double magnitude_sum = 0.0;
    double magnitude_product = 1.0;
    for (const auto& r : rs.roots) {
        sum = sum + r.value();
        product = product * r.value();
        const double m = std::abs(r.to_complex());
        magnitude_sum += m;
        magnitude_product *= std::max(1.0, m);
    }
    const Rational expected_sum = -c.f.coeff(static_cast<std::size_t>(d - 1)) / c.f.leading();
    Rational expected_product = c.f.coeff(0) / c.f.leading();
    if (d % 2 == 1) expected_product = -expected_product;
    const double tol = d * std::ldexp(1.0, -static_cast<int>(c.prec / 2));
    const BigComplex es(expected_sum, Rational(0), prec);
    const BigComplex ep(expected_product, Rational(0), prec);
    const double sum_err = (sum - es).abs().to_double();
    const double prod_err = (product - ep).abs().to_double();
    if (sum_err > tol * std::max({1.0, magnitude_sum, std::fabs(expected_sum.get_d())})) {
        return "root sum off by " + str(sum_err) + ", " + describe(c);
    }
    if (prod_err > tol * std::max({1.0, magnitude_product, std::fabs(expected_product.get_d())})) {
        return "root product off by " + str(prod_err) + ", " + describe(c);
    }
    return std::nullopt;
}

Outcome determinism(Rng& rng) {
    const RootCase c = random_root_case(rng);
    const RootSet a = solve(c);
    const RootSet b = solve(c);
    if (a.roots.size() != b.roots.size()) return "root counts differ, " + describe(c);
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
        const auto& x = a.roots[i];
        const auto& y = b.roots[i];
        if (x.precision_bits != y.precision_bits || !(x.real == y.real) || !(x.imag == y.imag) ||
            x.residual_bound != y.residual_bound || x.error_radius != y.error_radius) {
            return "root " + std::to_string(i) + " differs between runs, " + describe(c);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- archimedean heights

std::complex<double> random_escaping_point(Rng& rng, const Polynomial& f) {
    const double r = escape_radius(f) * uniform_real(rng, 1.05, 2.5);
    return std::polar(r, uniform_real(rng, -std::numbers::pi, std::numbers::pi));
}

// A Gaussian rational with small denominators near the given point.
ComplexRational rationalize(std::complex<double> z) {
    return {make_rational(Integer(static_cast<long>(std::lround(z.real() * 64))), Integer(64)),
            make_rational(Integer(static_cast<long>(std::lround(z.imag() * 64))), Integer(64))};
}

Outcome functional_equation(Rng& rng) {
    const Polynomial f = random_polynomial(rng, static_cast<int>(uniform(rng, 2, 3)), 4, 2);
    const std::complex<double> q = random_escaping_point(rng, f);
    std::vector<std::complex<double>> c;
    for (const auto& a : f.coeffs()) c.emplace_back(a.get_d(), 0.0);
    std::complex<double> fq(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) fq = fq * q + *it;
    const IterateOptions opts;
    const HeightEstimate h = height_iterate(f, q, opts);
    const HeightEstimate hf = height_iterate(f, fq, opts);
    if (h.verdict != OrbitVerdict::escaping || hf.verdict != OrbitVerdict::escaping) {
        return "orbit not escaping for f = " + show(f);
    }
    const double gap = std::fabs(hf.value - f.degree() * h.value);
    if (gap > 2 * opts.tol) return "gap " + str(gap) + " for f = " + show(f) + ", q = " + str(q);
    return std::nullopt;
}

class RootCache {
public:
    const RootSet& get(const Polynomial& f, unsigned n) {
        const auto key = std::make_pair(f.to_string(), n);
        auto it = cache_.find(key);
        if (it == cache_.end()) it = cache_.emplace(key, find_periodic_points(f, n)).first;
        return it->second;
    }

private:
    std::map<std::pair<std::string, unsigned>, RootSet> cache_;
};

Outcome cross_method(Rng& rng, RootCache& cache) {
    static const std::vector<Polynomial> gallery{build_gallery(GalleryKind::power, 2),
                                                 build_gallery(GalleryKind::chebyshev, 2),
                                                 build_gallery(GalleryKind::chebyshev_monic, 2)};
    const Polynomial& f = gallery[static_cast<std::size_t>(uniform(rng, 0, 2))];
    const ComplexRational q =
        rationalize(std::polar(uniform_real(rng, 2.5, 5.0), uniform_real(rng, -std::numbers::pi, std::numbers::pi)));
    const double reference = height_iterate(f, q.to_complex()).value;
    double previous = std::numeric_limits<double>::infinity();
    for (unsigned n : {2u, 4u, 6u, 8u}) {
        const double err = std::fabs(height_periodic_sum(f, q, n, cache.get(f, n)).value - reference);
        if (err > previous + 1e-12) {
            return "error grows at n = " + std::to_string(n) + " for f = " + show(f) + ", q = " + q.to_string();
        }
        previous = err;
    }
    if (previous > 5e-2) return "error " + str(previous) + " at n = 8 for f = " + show(f) + ", q = " + q.to_string();
    return std::nullopt;
}

Outcome conjugation_covariance(Rng& rng, RootCache& cache) {
    const IterateOptions opts;
    if (coin(rng)) {
        // T_2 against its monic conjugate x^2 - 2 = 2 T_2(x/2).
        const Polynomial t = build_gallery(GalleryKind::chebyshev, 2);
        const Polynomial psi = build_gallery(GalleryKind::chebyshev_monic, 2);
        const ComplexRational q = rationalize(
            std::polar(uniform_real(rng, 1.3, 3.0), uniform_real(rng, -std::numbers::pi, std::numbers::pi)));
        const ComplexRational q2{2 * q.re, 2 * q.im};
        const double gap = std::fabs(height_iterate(psi, q2.to_complex(), opts).value -
                                     height_iterate(t, q.to_complex(), opts).value);
        if (gap > 2 * opts.tol) return "iterate heights differ by " + str(gap) + " at q = " + q.to_string();
        const unsigned n = static_cast<unsigned>(uniform(rng, 2, 6));
        const double lhs = height_periodic_sum(psi, q2, n, cache.get(psi, n)).value;
        const double rhs = height_periodic_sum(t, q, n, cache.get(t, n)).value + std::ldexp(std::log(2.0), -static_cast<int>(n));
        if (std::fabs(lhs - rhs) > 1e-9) {
            return "periodic sums violate the leading-coefficient shift by " + str(std::fabs(lhs - rhs)) +
                   " at q = " + q.to_string() + ", n = " + std::to_string(n);
        }
        return std::nullopt;
    }
    // sigma(x) = +-x + beta.
    const Polynomial f = random_polynomial(rng, static_cast<int>(uniform(rng, 2, 3)), 3, 2);
    const Rational alpha = coin(rng) ? 1 : -1;
    const Rational beta = random_rational(rng, 4, 4);
    const Polynomial g = conjugate_linear(f, alpha, beta);
    const std::complex<double> q = random_escaping_point(rng, f);
    const ComplexRational qr = ComplexRational::from_complex(q);
    const ComplexRational sq{alpha * qr.re + beta, alpha * qr.im};
    const HeightEstimate a = height_iterate(f, q, opts);
    const HeightEstimate b = height_iterate(g, sq.to_complex(), opts);
    const double gap = std::fabs(a.value - b.value);
    if (gap > 2 * opts.tol) return "gap " + str(gap) + " for f = " + show(f) + ", beta = " + format_rational(beta);
    return std::nullopt;
}

Outcome identity_sides(Rng& rng) {
    const int d = static_cast<int>(uniform(rng, 2, 3));
    const Polynomial f = random_polynomial(rng, d, 3, 2);
    const unsigned n = static_cast<unsigned>(uniform(rng, 1, d == 2 ? 5 : 3));
    const ComplexRational q =
        rationalize(std::polar(uniform_real(rng, 0.0, 2.0) * escape_radius(f), uniform_real(rng, -3.1, 3.1)));
    const ComplexRational fq = [&] {
        ComplexRational x = q;
        for (unsigned k = 0; k < n; ++k) x = evaluate(f, x);
        return x;
    }();
    if (fq == q) return std::nullopt;
    const IdentitySides s = periodic_sum_identity(f, q, n);
    if (!(std::fabs(s.lhs - s.rhs) <= 1e-8)) {
        return "sides " + str(s.lhs) + " vs " + str(s.rhs) + " for f = " + show(f) + ", q = " + q.to_string() +
               ", n = " + std::to_string(n);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- p-adic heights

Outcome slope_sum(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    const int d = static_cast<int>(uniform(rng, 0, 8));
    std::vector<Rational> c;
    for (int i = 0; i <= d; ++i) c.push_back(coin(rng, 0.2) ? Rational(0) : random_with_valuation(rng, p));
    if (c.back() == 0) c.back() = 1;
    const Polynomial f(c);
    const NewtonPolygon np = newton_polygon(f, p);
    std::size_t low = 0;
    while (f.coeff(low) == 0) ++low;
    const std::string where = "f = " + show(f) + ", p = " + std::to_string(p);
    const Rational expected = Rational(valuation(f.leading(), p).value() - valuation(f.coeff(low), p).value());
    if (np.weighted_slope_sum() != expected) return "slope sum mismatch, " + where;
    unsigned length = 0;
    for (std::size_t i = 0; i < np.segments.size(); ++i) {
        length += np.segments[i].length;
        if (i > 0 && !(np.segments[i - 1].slope < np.segments[i].slope)) return "slopes not increasing, " + where;
    }
    if (length != static_cast<unsigned>(f.degree()) - low) return "lengths do not cover the degree, " + where;
    for (std::size_t i = 0; i + 1 < np.vertices.size(); ++i) {
        const auto& a = np.vertices[i];
        const auto& b = np.vertices[i + 1];
        for (const auto& pt : np.points) {
            if (pt.index < a.index || pt.index > b.index) continue;
            // (b - a) x (pt - a) >= 0 means pt is on or above the segment.
            const Integer cross = Integer(static_cast<long>(b.index - a.index)) * (pt.valuation - a.valuation) -
                                  Integer(static_cast<long>(b.valuation - a.valuation)) *
                                      Integer(static_cast<long>(pt.index - a.index));
            if (cross < 0) return "point below the hull, " + where;
        }
    }
    return std::nullopt;
}

// Good-reduction map with q either arbitrary or a constructed fixed point.
std::pair<Polynomial, Rational> random_padic_case(Rng& rng, std::uint64_t p, int d) {
    Polynomial f = random_good(rng, p, d, 4);
    Rational q = random_integral(rng, p, 5);
    if (coin(rng, 0.3)) {
        // Shift the constant term so that q becomes fixed.
        f = f + Polynomial::constant(q - f(q));
    }
    return {f, q};
}

Outcome series_vs_division(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    const int d = coin(rng, 0.7) ? 2 : 3;
    const auto [f, q] = random_padic_case(rng, p, d);
    const unsigned n_max = d == 2 ? 5 : 3;
    const auto series = periodic_sum_padic_series(f, p, q, n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        const PadicHeightResult lit = periodic_sum_padic_by_division(f, p, q, n);
        const PadicHeightResult& fast = series[n - 1];
        if (lit.value_in_valuation_units != fast.value_in_valuation_units || lit.deflation != fast.deflation) {
            return "n = " + std::to_string(n) + ": " + format_rational(fast.value_in_valuation_units) + " vs " +
                   format_rational(lit.value_in_valuation_units) + " for f = " + show(f) + ", q = " +
                   format_rational(q) + ", p = " + std::to_string(p);
        }
        // The roots of f_n(x + q) are xi - q.
        const Polynomial g = taylor_shift(periodic_polynomial(f, n), q);
        const Rational slopes = newton_polygon(g, p).weighted_slope_sum() / power(Rational(d), n);
        if (slopes != fast.value_in_valuation_units) {
            return "n = " + std::to_string(n) + ": slope sum " + format_rational(slopes) + " vs " +
                   format_rational(fast.value_in_valuation_units) + " for f = " + show(f) + ", q = " +
                   format_rational(q) + ", p = " + std::to_string(p);
        }
    }
    return std::nullopt;
}

Outcome polar_equality(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    const int d = static_cast<int>(uniform(rng, 2, 3));
    const Polynomial f = random_good(rng, p, d, 4);
    const long e = uniform(rng, 1, 3);
    const Rational q = make_rational(Integer(random_unit(rng, p, 9)),
                                     power(Integer(static_cast<unsigned long>(p)), static_cast<std::uint64_t>(e)));
    const auto series = periodic_sum_padic_series(f, p, q, 10);
    const std::string where = "f = " + show(f) + ", q = " + format_rational(q) + ", p = " + std::to_string(p);
    for (unsigned n = 1; n <= 10; ++n) {
        if (series[n - 1].value_in_valuation_units != Rational(e)) return "n = " + std::to_string(n) + ", " + where;
    }
    // Literal evaluation of f_n(q) for the first few n.
    for (unsigned n = 1; n <= 3; ++n) {
        const Rational fn = exact_iterate(f, q, n) - q;
        const Integer vb = leading_coefficient_power(f, n).valuation(p);
        const Rational value = make_rational(vb - valuation(fn, p).value(), power(Integer(d), n));
        if (value != Rational(e)) return "literal evaluation disagrees at n = " + std::to_string(n) + ", " + where;
    }
    return std::nullopt;
}

// f(0) = 0, f(a) = b, f(b) = a (a = b for a fixed point), plus a higher-order
// term vanishing on {0, a, b}. Returns nullopt unless f has good reduction.
std::optional<Polynomial> periodic_through(const Rational& a, const Rational& b, const Polynomial& tail, std::uint64_t p) {
    Polynomial base;
    if (a == b) {
        // x * (1 + c (x - a)) fixes 0 and a.
        base = Polynomial{Rational(0), Rational(1)} * Polynomial{1 - a, Rational(1)};
    } else {
        // x (s + t x) with a s + a^2 t = b and b s + b^2 t = a.
        const Rational det = a * b * b - b * a * a;
        if (det == 0) return std::nullopt;
        const Rational s = (b * b * b - a * a * a) / det;
        const Rational t = (a * a - b * b) / det;
        base = Polynomial{Rational(0), s, t};
    }
    Polynomial vanish = Polynomial{Rational(0), Rational(1)} * linear_factor(a);
    if (a != b) vanish = vanish * linear_factor(b);
    const Polynomial f = base + vanish * tail;
    if (f.degree() < 2 || !good_reduction(f, p)) return std::nullopt;
    return f;
}

Outcome periodic_keeps_valuation(Rng& rng) {
    for (int attempt = 0; attempt < 10000; ++attempt) {
        const std::uint64_t p = small_prime(rng);
        const auto pick = [&]() -> Rational {
            const Rational u(random_unit(rng, p, 6));
            return u * power(Rational(static_cast<unsigned long>(p)), static_cast<std::uint64_t>(uniform(rng, 0, 2)));
        };
        const Rational a = pick();
        const Rational b = coin(rng, 0.3) ? a : pick();
        if (b == 0 || a == 0) continue;
        const Polynomial tail = random_good(rng, p, static_cast<int>(uniform(rng, 0, 1)), 3);
        const auto f = periodic_through(a, b, tail, p);
        if (!f) continue;
        Rational x = a;
        const Valuation va = valuation(a, p);
        for (unsigned n = 1; n <= 20; ++n) {
            x = (*f)(x);
            if (valuation(x, p) != va) {
                return "v_p(f^(" + std::to_string(n) + ")(a)) != v_p(a) for f = " + show(*f) + ", a = " +
                       format_rational(a) + ", p = " + std::to_string(p);
            }
        }
        if (x != a) return "constructed cycle is not periodic for f = " + show(*f);
        return std::nullopt;
    }
    return "no good-reduction example found";
}

Outcome contraction(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    const Polynomial f = random_good(rng, p, static_cast<int>(uniform(rng, 2, 4)), 6);
    const Rational x = random_integral(rng, p, 30);
    Rational y = random_integral(rng, p, 30);
    if (coin(rng, 0.3)) y = x + random_integral(rng, p, 5) * power(Rational(static_cast<unsigned long>(p)), 3);
    if (valuation(Rational(f(x) - f(y)), p) < valuation(Rational(x - y), p)) {
        return "f = " + show(f) + " expands x = " + format_rational(x) + ", y = " + format_rational(y);
    }
    return std::nullopt;
}

Outcome padic_convergence(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    Polynomial f;
    if (coin(rng, 0.3)) {
        const GalleryKind kind = p == 2 ? (coin(rng) ? GalleryKind::power : GalleryKind::chebyshev_monic)
                                        : static_cast<GalleryKind>(uniform(rng, 0, 2));
        f = build_gallery(kind, static_cast<unsigned>(uniform(rng, 2, 3)));
    } else {
        f = random_good(rng, p, static_cast<int>(uniform(rng, 2, 3)), 4);
    }
    const Rational q = random_integral(rng, p, 6);
    const unsigned n_max = 40;
    const DiophantineReport report = diophantine_bound_check(f, p, q, n_max);
    if (!report.violations.empty()) return "violations against the computed constant";
    const auto series = periodic_sum_padic_series(f, p, q, n_max);
    for (unsigned n = 1; n <= n_max; ++n) {
        const Rational bound = make_rational(
            Integer(valuation(Integer(n), p).value() + report.c), power(Integer(f.degree()), n));
        if (abs(series[n - 1].value_in_valuation_units) > bound) {
            return "bound fails at n = " + std::to_string(n) + " for f = " + show(f) + ", q = " + format_rational(q);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- dynatomic

struct QPeriodicCase {
    Polynomial f;
    Rational xi;
};

// Quadratic or cubic map with a rational point of least period 1 or 2.
QPeriodicCase random_q_periodic(Rng& rng) {
    const Rational a = random_rational(rng, 3, 2);
    if (coin(rng)) {
        // Fixed point with a chosen multiplier.
        const long pick = uniform(rng, 0, 3);
        const Rational lambda = pick == 0 ? Rational(1) : pick == 1 ? Rational(-1) : random_rational(rng, 3, 2);
        const Polynomial shift{-a, Rational(1)};
        Polynomial f = Polynomial::constant(a) + shift * lambda + shift * shift * random_nonzero(rng, 2, 1);
        if (coin(rng, 0.3)) f = f + shift * shift * shift;
        return {f, a};
    }
    Rational b;
    do {
        b = random_rational(rng, 3, 2);
    } while (b == a);
    // x^2 + beta x + c swapping a and b.
    const Rational beta = -1 - a - b;
    const Rational c = b - a * a - beta * a;
    return {Polynomial{c, beta, Rational(1)}, a};
}

struct FpCase {
    FpPolynomial f;
    std::uint64_t xi;
    unsigned n_max;
};

FpCase random_fp_case(Rng& rng) {
    const std::uint64_t p = small_prime(rng);
    const int d = static_cast<int>(uniform(rng, 2, 3));
    std::vector<std::uint64_t> c;
    for (int i = 0; i < d; ++i) c.push_back(static_cast<std::uint64_t>(uniform(rng, 0, static_cast<long>(p) - 1)));
    c.push_back(static_cast<std::uint64_t>(uniform(rng, 1, static_cast<long>(p) - 1)));
    FpPolynomial f(p, c);
    // Walk into the cycle of a random start.
    std::uint64_t x = static_cast<std::uint64_t>(uniform(rng, 0, static_cast<long>(p) - 1));
    for (std::uint64_t k = 0; k < p; ++k) x = f(x);
    unsigned n_max = 1;
    while (std::pow(d, n_max + 1) <= 4096.0) ++n_max;
    return {f, x, n_max};
}

Outcome moebius_round_trip(Rng& rng) {
    std::vector<DynatomicRecord> records;
    std::string where;
    if (coin(rng)) {
        const QPeriodicCase c = random_q_periodic(rng);
        records = dynatomic_records(c.f, c.xi, c.f.degree() == 2 ? 6 : 4);
        where = "f = " + show(c.f) + ", xi = " + format_rational(c.xi);
    } else {
        const FpCase c = random_fp_case(rng);
        records = dynatomic_records(c.f, c.xi, c.n_max);
        where = "f = " + c.f.to_string() + " over F_" + std::to_string(c.f.prime()) + ", xi = " + std::to_string(c.xi);
    }
    for (const auto& r : records) {
        long total = 0;
        for (unsigned m : divisors(r.n)) total += records[m - 1].a_star_n;
        if (total != static_cast<long>(r.a_n)) return "inversion fails at n = " + std::to_string(r.n) + ", " + where;
        const bool divides = r.least_period && r.n % *r.least_period == 0;
        if ((r.a_n > 0) != divides) return "a_n > 0 disagrees with the least period at n = " + std::to_string(r.n) + ", " + where;
    }
    return std::nullopt;
}

Outcome essential_classification(Rng& rng) {
    const FpCase c = random_fp_case(rng);
    const auto m = least_period(c.f, c.xi);
    if (!m) return "constructed point is not periodic";
    const std::uint64_t lambda = multiplier(c.f, c.xi, *m);
    const auto r = multiplier_order(lambda, c.f.field());
    const auto predicted = essential_periods_predicted(*m, r, c.f.prime()).up_to(c.n_max);
    const auto observed = essential_periods_observed(c.f, c.xi, c.n_max);
    if (predicted != observed) {
        std::string s;
        for (unsigned n : observed) s += std::to_string(n) + " ";
        return "observed {" + s + "} differs from prediction for f = " + c.f.to_string() + " over F_" +
               std::to_string(c.f.prime()) + ", xi = " + std::to_string(c.xi);
    }
    return std::nullopt;
}

Outcome star_nonnegative(Rng& rng) {
    const FpCase c = random_fp_case(rng);
    for (const auto& r : dynatomic_records(c.f, c.xi, c.n_max)) {
        if (r.a_star_n < 0) return "negative a_n* at n = " + std::to_string(r.n) + " for f = " + c.f.to_string();
    }
    const QPeriodicCase q = random_q_periodic(rng);
    for (const auto& r : dynatomic_records(q.f, q.xi, q.f.degree() == 2 ? 6 : 4)) {
        if (r.a_star_n < 0) return "negative a_n* at n = " + std::to_string(r.n) + " for f = " + show(q.f);
    }
    return std::nullopt;
}

Outcome bounded_char_zero(Rng& rng) {
    const QPeriodicCase c = random_q_periodic(rng);
    const auto m = least_period(c.f, c.xi);
    if (!m) return "constructed point is not periodic";
    const auto r = multiplier_order(multiplier(c.f, c.xi, *m));
    const unsigned base = multiplicity_a_n(c.f, c.xi, *m);
    const unsigned at_r = r ? multiplicity_a_n(c.f, c.xi, *m * static_cast<unsigned>(*r)) : base;
    const unsigned k_max = c.f.degree() == 2 ? 8 / *m : 4 / *m;
    for (unsigned k = 1; k <= k_max; ++k) {
        const unsigned a = multiplicity_a_n(c.f, c.xi, k * *m);
        const unsigned expected = r && k % *r == 0 ? at_r : base;
        if (a != expected) {
            return "a_" + std::to_string(k * *m) + " = " + std::to_string(a) + ", expected " + std::to_string(expected) +
                   " for f = " + show(c.f) + ", xi = " + format_rational(c.xi);
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- cli

JobConfig random_config(Rng& rng) {
    JobConfig cfg;
    const long kind = uniform(rng, 0, 3);
    if (kind == 3) {
        cfg.morphism.kind = "explicit";
        cfg.morphism.coeffs = random_polynomial(rng, static_cast<int>(uniform(rng, 2, 3)), 3, 2);
        cfg.morphism.degree = static_cast<unsigned>(cfg.morphism.coeffs.degree());
    } else {
        cfg.morphism.kind = to_string(static_cast<GalleryKind>(kind));
        cfg.morphism.degree = static_cast<unsigned>(uniform(rng, 2, 3));
    }
    const Polynomial f = cfg.morphism.polynomial();
    if (coin(rng)) {
        cfg.place.prime = 0;
        cfg.point = {random_rational(rng, 9, 4), coin(rng) ? random_rational(rng, 9, 4) : Rational(0)};
    } else {
        std::uint64_t p = small_prime(rng);
        for (int tries = 0; tries < 8 && !good_reduction(f, p); ++tries) p = small_prime(rng);
        cfg.place.prime = p;
        cfg.point = random_rational(rng, 9, 9);
    }
    cfg.depths.clear();
    const long count = uniform(rng, 1, 3);
    for (long i = 0; i < count; ++i) cfg.depths.push_back(static_cast<unsigned>(uniform(rng, 1, 3)));
    cfg.precision_bits = static_cast<unsigned>(uniform(rng, 32, 256));
    cfg.seed = static_cast<std::uint64_t>(uniform(rng, 0, 1000000));
    cfg.samples = static_cast<std::size_t>(uniform(rng, 50, 300));
    cfg.sample_depth = static_cast<unsigned>(uniform(rng, 5, 20));
    return cfg;
}

Outcome job_determinism(Rng& rng) {
    const JobConfig cfg = random_config(rng);
    std::string first;
    std::string second;
    try {
        first = run_height_job(cfg).to_csv().str();
    } catch (const Error& e) {
        first = std::string("error: ") + e.what();
    }
    try {
        second = run_height_job(cfg).to_csv().str();
    } catch (const Error& e) {
        second = std::string("error: ") + e.what();
    }
    if (first != second) return "CSV differs between runs for " + serialize_job_config(cfg);
    return std::nullopt;
}

Outcome config_round_trip(Rng& rng) {
    JobConfig cfg = random_config(rng);
    if (coin(rng)) cfg.output = "out_" + std::to_string(uniform(rng, 0, 99)) + ".csv";
    const std::string text = serialize_job_config(cfg);
    const JobConfig back = parse_job_config(text);
    if (!(back == cfg)) return "round trip changed " + text;
    if (serialize_job_config(back) != text) return "second serialization differs for " + text;
    return std::nullopt;
}

}  // namespace

std::vector<PropertyResult> polynomial_properties(const PropertyOptions& o) {
    const std::string m = "polynomial_engine";
    return {run_property(m, "iterate_splits_as_composition", o, iterate_compose),
            run_property(m, "division_reconstructs", o, division_reconstruction),
            run_property(m, "multiplicity_shifts_by_factor", o, multiplicity_shift),
            run_property(m, "conjugation_round_trip", o, conjugation_round_trip),
            run_property(m, "valuation_axioms", o, valuation_axioms),
            run_property(m, "truncated_orbit_matches_exact", o, orbit_truncation)};
}

std::vector<PropertyResult> rootfinder_properties(const PropertyOptions& o) {
    const std::string m = "complex_rootfinder";
    return {run_property(m, "residual_certification", o, residual_certification),
            run_property(m, "vieta_relations", o, vieta),
            run_property(m, "bitwise_determinism", o, determinism)};
}

std::vector<PropertyResult> archimedean_properties(const PropertyOptions& o) {
    const std::string m = "archimedean_heights";
    RootCache cache;
    return {run_property(m, "functional_equation", o, functional_equation),
            run_property(m, "cross_method_agreement", o, [&](Rng& rng) { return cross_method(rng, cache); }),
            run_property(m, "conjugation_covariance", o, [&](Rng& rng) { return conjugation_covariance(rng, cache); }),
            run_property(m, "identity_sides_agree", o, identity_sides)};
}

std::vector<PropertyResult> padic_properties(const PropertyOptions& o) {
    const std::string m = "padic_heights";
    return {run_property(m, "newton_slope_sum", o, slope_sum),
            run_property(m, "series_division_and_slopes_agree", o, series_vs_division),
            run_property(m, "polar_region_equality", o, polar_equality),
            run_property(m, "periodic_points_keep_valuation", o, periodic_keeps_valuation),
            run_property(m, "good_reduction_contracts", o, contraction),
            run_property(m, "periodic_sum_bound", o, padic_convergence)};
}

std::vector<PropertyResult> dynatomic_properties(const PropertyOptions& o) {
    const std::string m = "dynatomic";
    return {run_property(m, "moebius_round_trip", o, moebius_round_trip),
            run_property(m, "essential_periods_match_prediction", o, essential_classification),
            run_property(m, "star_multiplicities_nonnegative", o, star_nonnegative),
            run_property(m, "char_zero_multiplicities_bounded", o, bounded_char_zero)};
}

std::vector<PropertyResult> cli_properties(const PropertyOptions& o) {
    const std::string m = "cli_app";
    return {run_property(m, "job_output_deterministic", o, job_determinism),
            run_property(m, "config_round_trip", o, config_round_trip)};
}

std::vector<PropertyResult> run_property_suites(const PropertyOptions& options) {
    std::vector<PropertyResult> out;
    for (auto suite : {polynomial_properties, rootfinder_properties, archimedean_properties, padic_properties,
                       dynatomic_properties, cli_properties}) {
        auto part = suite(options);
        out.insert(out.end(), part.begin(), part.end());
    }
    return out;
}

}  // namespace morphic
