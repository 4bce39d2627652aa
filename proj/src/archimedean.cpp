#include "morphic/archimedean.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace morphic {

std::string to_string(HeightMethod m) {
    switch (m) {
        case HeightMethod::iterate: return "iterate";
        case HeightMethod::periodic_sum: return "periodic_sum";
        case HeightMethod::backward_integral: return "backward_integral";
        case HeightMethod::closed_form: return "closed_form";
    }
    return "unknown";
}

std::string to_string(OrbitVerdict v) {
    switch (v) {
        case OrbitVerdict::escaping: return "escaping";
        case OrbitVerdict::bounded: return "bounded";
        case OrbitVerdict::indeterminate: return "indeterminate";
    }
    return "unknown";
}

namespace {

void require_degree_two(const Polynomial& f) {
    if (f.degree() < 2) throw PreconditionError("height computations need degree >= 2");
}

std::vector<std::complex<double>> double_coeffs(const Polynomial& f) {
    std::vector<std::complex<double>> out;
    for (const auto& c : f.coeffs()) out.emplace_back(c.get_d(), 0.0);
    return out;
}

std::complex<double> horner(const std::vector<std::complex<double>>& c, std::complex<double> z) {
    std::complex<double> acc(0.0, 0.0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

double power_of(unsigned d, unsigned n) { return std::pow(static_cast<double>(d), static_cast<double>(n)); }

ComplexRational exact_iterate(const Polynomial& f, const ComplexRational& q, unsigned n) {
    ComplexRational x = q;
    for (unsigned k = 0; k < n; ++k) x = evaluate(f, x);
    return x;
}

struct Potential {
    double mean = 0.0;
    double spread = 0.0;  // standard error of the mean
    std::size_t excluded = 0;
};

Potential potential(const MeasureSample& sample, std::complex<double> q) {
    Potential out;
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t used = 0;
    for (const auto& x : sample.points) {
        const double r = std::abs(x - q);
        if (r < kSampleExclusionRadius) {
            ++out.excluded;
            continue;
        }
        const double l = std::log(r);
        sum += l;
        sum_sq += l * l;
        ++used;
    }
    if (used == 0) throw DegenerateInputError("every sample point lies within the exclusion radius of q");
    out.mean = sum / static_cast<double>(used);
    const double var = std::max(0.0, sum_sq / static_cast<double>(used) - out.mean * out.mean);
    out.spread = std::sqrt(var / static_cast<double>(used));
    return out;
}

}  // namespace

HeightEstimate height_iterate(const Polynomial& f, std::complex<double> q, const IterateOptions& options) {
    require_degree_two(f);
    if (!(options.tol > 0)) throw PreconditionError("tolerance must be positive");
    const unsigned d = static_cast<unsigned>(f.degree());
    const auto c = double_coeffs(f);
    const double lead = std::abs(c.back());
    const double log_lead = log_abs(f.leading());
    const double r_escape = escape_radius(f);
    const double r_big = std::max(r_escape, 10.0);

    HeightEstimate out;
    out.method = HeightMethod::iterate;
    std::complex<double> z = q;
    unsigned steps = 0;
    double largest = std::abs(z);
    while (std::abs(z) <= r_big) {
        if (steps == options.max_iterations) {
            out.depth_n = std::max(1u, steps);
            out.verdict = largest <= r_escape ? OrbitVerdict::bounded : OrbitVerdict::indeterminate;
            out.error_hint = out.verdict == OrbitVerdict::bounded ? 0.0 : 1.0;
            return out;
        }
        z = horner(c, z);
        ++steps;
        largest = std::max(largest, std::abs(z));
        if (!std::isfinite(largest)) break;
    }
    if (!std::isfinite(std::abs(z))) {
        out.verdict = OrbitVerdict::indeterminate;
        out.depth_n = std::max(1u, steps);
        out.error_hint = 1.0;
        return out;
    }

    double scale = std::pow(static_cast<double>(d), -static_cast<double>(steps));
    double value = scale * (std::log(std::abs(z)) + log_lead / (d - 1));
    double term = 0.0;
    unsigned k = steps;
    for (;; ++k) {
        const std::complex<double> w = std::isfinite(std::abs(z)) ? 1.0 / z : 0.0;
        std::complex<double> r = c.front();
        for (std::size_t i = 1; i < c.size(); ++i) r = r * w + c[i];
        scale /= d;
        term = scale * std::log(std::abs(r) / lead);
        value += term;
        if (std::fabs(term) < options.tol || w == 0.0) break;
        z = horner(c, z);
    }
    out.value = std::max(0.0, value);
    out.depth_n = std::max(1u, k);
    out.error_hint = std::fabs(term);
    out.verdict = OrbitVerdict::escaping;
    return out;
}

HeightEstimate height_periodic_sum(const Polynomial& f, const ComplexRational& q, unsigned n,
                                   mpfr_prec_t precision_bits) {
    require_degree_two(f);
    return height_periodic_sum(f, q, n, find_periodic_points(f, n, precision_bits));
}

HeightEstimate height_periodic_sum(const Polynomial& f, const ComplexRational& q, unsigned n, const RootSet& roots) {
    require_degree_two(f);
    if (n == 0) throw PreconditionError("depth must be positive");
    const unsigned d = static_cast<unsigned>(f.degree());
    const double dn = power_of(d, n);
    const bool periodic = exact_iterate(f, q, n) == q;
    const mpfr_prec_t prec = roots.roots.empty() ? 128 : roots.roots.front().precision_bits;
    const double tol = std::ldexp(1.0, -static_cast<int>(prec / 4));
    const BigComplex qq(q.re, q.im, prec);

    HeightEstimate out;
    out.method = HeightMethod::periodic_sum;
    out.depth_n = n;
    double sum = 0.0;
    double err = 0.0;
    for (const auto& root : roots.roots) {
        const BigComplex diff = root.value() - qq;
        const double dist = diff.abs().to_double();
        if (periodic && dist <= tol) {
            ++out.excluded;
            continue;
        }
        sum += diff.log_abs().to_double();
        err += root.error_radius / dist;
    }
    out.value = sum / dn + leading_coefficient_power(f, n).normalized_log_magnitude();
    out.error_hint = err / dn;
    out.verdict = OrbitVerdict::escaping;
    return out;
}

IdentitySides periodic_sum_identity(const Polynomial& f, const ComplexRational& q, unsigned n,
                                    mpfr_prec_t precision_bits) {
    require_degree_two(f);
    return periodic_sum_identity(f, q, n, find_periodic_points(f, n, precision_bits));
}

IdentitySides periodic_sum_identity(const Polynomial& f, const ComplexRational& q, unsigned n, const RootSet& roots) {
    require_degree_two(f);
    if (n == 0) throw PreconditionError("depth must be positive");
    const ComplexRational fn = exact_iterate(f, q, n) - q;
    if (fn.is_zero()) throw PreconditionError("q is periodic with period dividing n; f_n(q) = 0");
    const double dn = power_of(static_cast<unsigned>(f.degree()), n);
    const mpfr_prec_t prec = roots.roots.empty() ? 128 : roots.roots.front().precision_bits;
    const BigComplex qq(q.re, q.im, prec);
    double sum = 0.0;
    for (const auto& root : roots.roots) sum += (root.value() - qq).log_abs().to_double();
    IdentitySides out;
    out.lhs = log_abs(fn) / dn;
    out.rhs = sum / dn + leading_coefficient_power(f, n).normalized_log_magnitude();
    return out;
}

std::vector<std::complex<double>> preimages(const Polynomial& f, std::complex<double> z) {
    require_degree_two(f);
    return solve_preimages(f, z);
}

MeasureSample sample_maximal_measure(const Polynomial& f, unsigned depth, std::size_t count, std::uint64_t seed) {
    require_degree_two(f);
    if (depth == 0) throw PreconditionError("sample depth must be positive");
    if (count == 0) throw PreconditionError("sample count must be positive");
    const std::complex<double> base = std::polar(escape_radius(f), 0.5);
    const std::uint64_t d = static_cast<std::uint64_t>(f.degree());
    std::mt19937_64 rng(seed);
    MeasureSample out;
    out.depth = depth;
    out.seed = seed;
    out.points.reserve(count);
    for (std::size_t s = 0; s < count; ++s) {
        std::complex<double> z = base;
        for (unsigned k = 0; k < depth; ++k) z = preimages(f, z)[rng() % d];
        out.points.push_back(z);
    }
    return out;
}

HeightEstimate height_backward_integral(const Polynomial& f, std::complex<double> q, const MeasureSample& sample) {
    require_degree_two(f);
    if (sample.points.empty()) throw PreconditionError("empty measure sample");
    const Potential pot = potential(sample, q);
    HeightEstimate out;
    out.method = HeightMethod::backward_integral;
    out.depth_n = std::max(1u, sample.depth);
    out.value = log_abs(f.leading()) / (f.degree() - 1) + pot.mean;
    out.error_hint = pot.spread;
    out.excluded = pot.excluded;
    return out;
}

PullbackSides pullback_invariance_check(const Polynomial& f, std::complex<double> q, const MeasureSample& sample) {
    require_degree_two(f);
    if (!f.is_monic()) throw PreconditionError("pullback check needs a monic polynomial");
    const std::complex<double> fq = horner(double_coeffs(f), q);
    PullbackSides out;
    out.lhs = potential(sample, fq).mean;
    out.rhs = f.degree() * potential(sample, q).mean;
    return out;
}

HeightEstimate chebyshev_closed_form(unsigned d, std::complex<double> q) {
    if (d < 2) throw PreconditionError("degree must be at least 2");
    const std::complex<double> s = std::sqrt(q * q - 1.0);
    std::complex<double> psi = q + s;
    if (std::abs(psi) < 1.0) psi = q - s;
    HeightEstimate out;
    out.method = HeightMethod::closed_form;
    out.value = std::max(0.0, std::log(std::abs(psi)));
    out.verdict = out.value > 0 ? OrbitVerdict::escaping : OrbitVerdict::bounded;
    return out;
}

HeightEstimate power_map_height(unsigned d, std::complex<double> q) {
    if (d < 2) throw PreconditionError("degree must be at least 2");
    HeightEstimate out;
    out.method = HeightMethod::closed_form;
    out.value = std::max(0.0, std::log(std::abs(q)));
    out.verdict = out.value > 0 ? OrbitVerdict::escaping : OrbitVerdict::bounded;
    return out;
}

}  // namespace morphic
