#include "morphic/rootfinder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace morphic {

namespace {

// Rotation of the starting circle, an irrational multiple of 2*pi.
constexpr double kStartAngle = 0.7390851332151607;

double magnitude(const BigComplex& z) { return z.abs().to_double(); }

BigFloat scaled_pow2(double v, long exponent, mpfr_prec_t precision) {
    BigFloat out(v, precision);
    mpfr_mul_2si(out.raw(), out.raw(), exponent, MPFR_RNDN);
    return out;
}

struct BoundCoefficients {
    std::vector<BigFloat> coeffs;
    std::vector<double> magnitudes;
};

BoundCoefficients bind_coefficients(const Polynomial& f, mpfr_prec_t precision) {
    BoundCoefficients out;
    for (const auto& c : f.coeffs()) {
        out.coeffs.emplace_back(c, precision);
        out.magnitudes.push_back(std::fabs(c.get_d()));
    }
    return out;
}

// Horner for value and derivative, plus the scale sum |a_i||z|^i.
void horner(const BoundCoefficients& a, const BigComplex& z, BigComplex& value, BigComplex& derivative,
            double& scale) {
    const mpfr_prec_t prec = z.precision();
    value = BigComplex(prec);
    derivative = BigComplex(prec);
    scale = 0.0;
    const double r = magnitude(z);
    for (std::size_t k = a.coeffs.size(); k-- > 0;) {
        derivative = derivative * z + value;
        value = value * z;
        value.re += a.coeffs[k];
        scale = scale * r + a.magnitudes[k];
    }
}

std::vector<long double> to_doubles(const Polynomial& f) {
    std::vector<long double> out;
    for (const auto& c : f.coeffs()) out.push_back(static_cast<long double>(c.get_d()));
    return out;
}

using LongComplex = std::complex<long double>;

void horner(const std::vector<long double> & a, LongComplex z, LongComplex& value, LongComplex& derivative,
            long double& scale) {
    value = derivative = 0.0L;
    scale = 0.0L;
    const long double r = std::abs(z);
    for (std::size_t k = a.size(); k-- > 0;) {
        derivative = derivative * z + value;
        value = value * z + a[k];
        scale = scale * r + std::fabs(a[k]);
    }
}

bool usable(const DoubleEvaluation& e) {
    return std::isfinite(e.value.real()) && std::isfinite(e.value.imag()) && std::isfinite(e.derivative.real()) &&
           std::isfinite(e.derivative.imag()) && std::isfinite(e.scale) && e.derivative != 0.0L;
}

// Aberth iteration in double precision for small degrees.
std::vector<std::complex<double>> small_roots(const std::vector<std::complex<double>>& c) {
    const std::size_t d = c.size() - 1;
    double m = 0.0;
    for (std::size_t i = 0; i < d; ++i) m = std::max(m, std::abs(c[i]) / std::abs(c[d]));
    std::vector<std::complex<double>> z = circle_points(d, 1.0 + m);
    auto eval = [&c](std::complex<double> x, std::complex<double>& v, std::complex<double>& dv) {
        v = dv = 0.0;
        for (std::size_t k = c.size(); k-- > 0;) {
            dv = dv * x + v;
            v = v * x + c[k];
        }
    };
    for (int iter = 0; iter < 500; ++iter) {
        double worst = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            std::complex<double> v, dv;
            eval(z[i], v, dv);
            if (v == 0.0) continue;
            const std::complex<double> newton = dv == 0.0 ? std::complex<double>(1e-8, 0.0) : v / dv;
            std::complex<double> s(0.0, 0.0);
            for (std::size_t j = 0; j < d; ++j) {
                if (j != i && z[i] != z[j]) s += 1.0 / (z[i] - z[j]);
            }
            const std::complex<double> w = newton / (1.0 - newton * s);
            z[i] -= w;
            worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
        }
        if (worst < 1e-15) break;
    }
    return z;
}

}  // namespace

std::vector<std::complex<double>> circle_points(std::size_t d, double radius) {
    std::vector<std::complex<double>> out(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(d) + kStartAngle;
        out[k] = std::polar(radius, theta);
    }
    return out;
}

std::vector<std::complex<double>> solve_preimages(const Polynomial& f, std::complex<double> c) {
    if (f.degree() < 1) throw PreconditionError("preimages under a constant map");
    std::vector<std::complex<double>> coeffs;
    for (const auto& a : f.coeffs()) coeffs.emplace_back(a.get_d(), 0.0);
    coeffs.front() -= c;
    std::vector<std::complex<double>> out;
    if (coeffs.size() == 2) {
        out = {-coeffs[0] / coeffs[1]};
    } else if (coeffs.size() == 3) {
        const std::complex<double> a = coeffs[2], b = coeffs[1], k = coeffs[0];
        const std::complex<double> root = std::sqrt(b * b - 4.0 * a * k);
        const std::complex<double> s = std::real(std::conj(b) * root) >= 0.0 ? b + root : b - root;
        if (s == 0.0) {
            out = {-b / (2.0 * a), -b / (2.0 * a)};
        } else {
            const std::complex<double> t = -0.5 * s;
            out = {t / a, k / t};
        }
    } else {
        out = small_roots(coeffs);
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return std::arg(x) < std::arg(y); });
    return out;
}

std::vector<std::complex<double>> RootTarget::initial_points() const { return circle_points(degree(), initial_radius()); }

CoefficientTarget::CoefficientTarget(Polynomial f) : f_(std::move(f)) {
    if (f_.degree() < 1) throw PreconditionError("root finding needs degree >= 1");
    coeffs_ = to_doubles(f_);
}

DoubleEvaluation CoefficientTarget::evaluate_double(std::complex<double> z) const {
    DoubleEvaluation e;
    horner(coeffs_, LongComplex(z), e.value, e.derivative, e.scale);
    return e;
}

std::size_t CoefficientTarget::degree() const { return static_cast<std::size_t>(f_.degree()); }

double CoefficientTarget::initial_radius() const { return cauchy_radius(f_); }

double CoefficientTarget::scale_floor() const {
    long double sum = 0.0L;
    for (const auto a : coeffs_) sum += std::fabs(a);
    return static_cast<double>(sum);
}

Evaluator CoefficientTarget::bind(mpfr_prec_t precision) const {
    return [a = bind_coefficients(f_, precision)](const BigComplex& z) {
        Evaluation e{BigComplex(z.precision()), BigComplex(z.precision()), 0.0};
        horner(a, z, e.value, e.derivative, e.scale);
        return e;
    };
}

PeriodicPointTarget::PeriodicPointTarget(Polynomial f, unsigned n) : f_(std::move(f)), n_(n) {
    if (f_.degree() < 2) throw PreconditionError("periodic points need degree >= 2");
    if (n_ == 0) throw PreconditionError("period must be positive");
    coeffs_ = to_doubles(f_);
}

DoubleEvaluation PeriodicPointTarget::evaluate_double(std::complex<double> z) const {
    const LongComplex z0(z);
    LongComplex x = z0;
    LongComplex chain = 1.0L;
    long double error = 0.0L;
    for (unsigned k = 0; k < n_; ++k) {
        LongComplex value, derivative;
        long double s = 0.0L;
        horner(coeffs_, x, value, derivative, s);
        error = std::abs(derivative) * error + s;
        chain *= derivative;
        x = value;
    }
    return {x - z0, chain - 1.0L, error + std::abs(z0)};
}

std::size_t PeriodicPointTarget::degree() const {
    std::size_t d = 1;
    for (unsigned i = 0; i < n_; ++i) d *= static_cast<std::size_t>(f_.degree());
    return d;
}

double PeriodicPointTarget::initial_radius() const { return cauchy_radius(f_); }

std::vector<std::complex<double>> PeriodicPointTarget::initial_points() const {
    std::vector<std::complex<double>> level{std::polar(escape_radius(f_), kStartAngle)};
    for (unsigned k = 0; k < n_; ++k) {
        std::vector<std::complex<double>> next;
        next.reserve(level.size() * static_cast<std::size_t>(f_.degree()));
        for (const auto& c : level) {
            for (const auto& w : solve_preimages(f_, c)) next.push_back(w);
        }
        level = std::move(next);
    }
    for (const auto& z : level) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return RootTarget::initial_points();
    }
    return level;
}

Evaluator PeriodicPointTarget::bind(mpfr_prec_t precision) const {
    return [a = bind_coefficients(f_, precision), n = n_](const BigComplex& z) {
        const mpfr_prec_t prec = z.precision();
        BigComplex x = z;
        BigComplex chain(BigFloat(1.0, prec), BigFloat(prec));
        BigComplex value(prec);
        BigComplex derivative(prec);
        // First-order bound on the accumulated rounding error of the orbit.
        double error = 0.0;
        for (unsigned k = 0; k < n; ++k) {
            double s = 0.0;
            horner(a, x, value, derivative, s);
            error = magnitude(derivative) * error + s;
            chain = chain * derivative;
            x = value;
        }
        Evaluation e{x - z, chain, error + magnitude(z)};
        e.derivative.re -= BigFloat(1.0, prec);
        return e;
    };
}

RootSet find_roots(const RootTarget& target, const RootFinderOptions& options) {
    const std::size_t d = target.degree();
    RootSet out;
    out.defining_degree = d;
    if (d == 0) return out;

    mpfr_prec_t prec = options.precision_bits;
    const std::size_t max_iter = options.max_iterations ? options.max_iterations : 200 + 2 * d;
    std::vector<std::complex<double>> zd = target.initial_points();
    if (zd.size() != d) throw Error("root target returned the wrong number of starting points");
    std::vector<BigComplex> z;
    z.reserve(d);
    for (const auto& x : zd) z.emplace_back(x, prec);

    // Double-precision phase. Evaluations that overflow are redone at the working precision.
    {
        const Evaluator fallback = target.bind(prec);
        constexpr double eps = std::numeric_limits<double>::epsilon();
        std::vector<char> done(d, 0);
        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            bool active = false;
            for (std::size_t i = 0; i < d; ++i) {
                if (done[i]) continue;
                std::complex<double> newton;
                const DoubleEvaluation e = target.evaluate_double(zd[i]);
                if (usable(e)) {
                    if (std::abs(e.value) <= 4 * eps * e.scale) {
                        done[i] = 1;
                        continue;
                    }
                    newton = std::complex<double>(e.value / e.derivative);
                } else {
                    const Evaluation big = fallback(BigComplex(zd[i], prec));
                    if ((big.value.re.is_zero() && big.value.im.is_zero()) ||
                        (big.derivative.re.is_zero() && big.derivative.im.is_zero())) {
                        done[i] = 1;
                        continue;
                    }
                    newton = (big.value / big.derivative).to_complex();
                }
                if (!std::isfinite(newton.real()) || !std::isfinite(newton.imag())) {
                    done[i] = 1;
                    continue;
                }
                active = true;
                std::complex<double> repulsion(0.0, 0.0);
                for (std::size_t j = 0; j < d; ++j) {
                    if (j != i && zd[i] != zd[j]) repulsion += 1.0 / (zd[i] - zd[j]);
                }
                const std::complex<double> denom = 1.0 - newton * repulsion;
                const std::complex<double> w = denom == 0.0 ? newton : newton / denom;
                zd[i] -= w;
                if (std::abs(w) <= 4 * eps * std::max(1.0, std::abs(zd[i]))) done[i] = 1;
            }
            if (!active) break;
        }
        for (std::size_t i = 0; i < d; ++i) z[i] = BigComplex(zd[i], prec);
    }

    const double floor = target.scale_floor();
    std::vector<char> certified(d, 0);
    std::vector<double> residuals(d, std::numeric_limits<double>::infinity());
    std::vector<double> steps(d, 0.0);

    while (true) {
        const Evaluator eval = target.bind(prec);
        const mpfr_prec_t noise_bits = prec - 8;
        const long step_bits = static_cast<long>(prec) * 3 / 4;
        std::vector<char> converged = certified;

        for (std::size_t iter = 0; iter < max_iter; ++iter) {
            bool active = false;
            for (std::size_t i = 0; i < d; ++i) {
                if (converged[i]) continue;
                const Evaluation e = eval(z[i]);
                if (e.value.re.is_zero() && e.value.im.is_zero()) {
                    converged[i] = 1;
                    continue;
                }
                if (std::isfinite(e.scale) &&
                    e.value.abs() < scaled_pow2(std::max(e.scale, floor), -static_cast<long>(noise_bits), prec)) {
                    converged[i] = 1;
                    continue;
                }
                active = true;
                if (e.derivative.re.is_zero() && e.derivative.im.is_zero()) {
                    // Stationary point of p: nudge off it.
                    const double nudge = std::ldexp(1.0, -20) * std::max(1.0, std::abs(zd[i]));
                    z[i].re += BigFloat(nudge, prec);
                    zd[i] = z[i].to_complex();
                    continue;
                }
                const BigComplex newton = e.value / e.derivative;
                std::complex<double> repulsion(0.0, 0.0);
                const double near = 1e-8 * std::max(1.0, std::abs(zd[i]));
                BigComplex exact_repulsion(prec);
                bool have_exact = false;
                for (std::size_t j = 0; j < d; ++j) {
                    if (j == i) continue;
                    const std::complex<double> diff = zd[i] - zd[j];
                    if (std::abs(diff) > near) {
                        repulsion += 1.0 / diff;
                        continue;
                    }
                    const BigComplex big_diff = z[i] - z[j];
                    if (big_diff.re.is_zero() && big_diff.im.is_zero()) continue;
                    exact_repulsion = exact_repulsion + BigComplex(BigFloat(1.0, prec), BigFloat(prec)) / big_diff;
                    have_exact = true;
                }
                BigComplex sum(repulsion, prec);
                if (have_exact) sum = sum + exact_repulsion;
                BigComplex denom = BigComplex(BigFloat(1.0, prec), BigFloat(prec)) - newton * sum;
                const BigComplex w = (denom.re.is_zero() && denom.im.is_zero()) ? newton : newton / denom;
                z[i] = z[i] - w;
                zd[i] = z[i].to_complex();
                const double step = magnitude(w);
                steps[i] = step;
                if (std::ldexp(step, step_bits) <= std::max(1.0, std::abs(zd[i]))) converged[i] = 1;
            }
            if (!active) break;
        }

        // Certify every root at twice the working precision.
        const Evaluator check = target.bind(2 * prec);
        bool all_ok = true;
        for (std::size_t i = 0; i < d; ++i) {
            BigComplex zz = z[i];
            zz.set_precision(2 * prec);
            const Evaluation e = check(zz);
            const BigFloat resid = e.value.abs();
            residuals[i] = resid.to_double(MPFR_RNDU);
            bool ok = std::isfinite(e.scale) &&
                      !(resid > scaled_pow2(std::max(e.scale, floor), -static_cast<long>(options.precision_bits / 2), 2 * prec));
            if (ok) {
                const bool flat = e.derivative.re.is_zero() && e.derivative.im.is_zero();
                steps[i] = flat ? 0.0 : (e.value / e.derivative).abs().to_double(MPFR_RNDU);
                const double radius_cap = std::ldexp(std::max(1.0, std::abs(zd[i])),
                                                     -static_cast<int>(options.precision_bits / 2 + 8));
                ok = steps[i] <= radius_cap;
            }
            certified[i] = ok ? 1 : 0;
            all_ok = all_ok && ok;
        }

        auto build = [&] {
            RootSet rs;
            rs.defining_degree = d;
            for (std::size_t i = 0; i < d; ++i) {
                ComplexApprox r{z[i].re, z[i].im, prec, residuals[i], steps[i]};
                rs.roots.push_back(std::move(r));
            }
            return rs;
        };

        if (all_ok) return build();
        if (2 * prec > options.max_precision_bits) {
            throw ConvergenceError("root finder did not converge for degree " + std::to_string(d) + " at " +
                                       std::to_string(prec) + " bits",
                                   build(), residuals);
        }
        prec *= 2;
        for (auto& zi : z) zi.set_precision(prec);
    }
}

RootSet find_roots(const Polynomial& f, mpfr_prec_t precision_bits) {
    RootFinderOptions options;
    options.precision_bits = precision_bits;
    return find_roots(CoefficientTarget(f), options);
}

RootSet find_periodic_points(const Polynomial& f, unsigned n, mpfr_prec_t precision_bits, std::size_t degree_cap) {
    const PeriodicPointTarget target(f, n);
    std::size_t total = 1;
    for (unsigned i = 0; i < n; ++i) {
        total *= static_cast<std::size_t>(f.degree());
        if (total > degree_cap) {
            throw ResourceError("periodic point count " + std::to_string(f.degree()) + "^" + std::to_string(n) +
                                " exceeds cap " + std::to_string(degree_cap));
        }
    }
    RootFinderOptions options;
    options.precision_bits = precision_bits;
    return find_roots(target, options);
}

std::vector<RootCluster> cluster_roots(const RootSet& roots, double tol) {
    if (!(tol > 0)) throw PreconditionError("cluster tolerance must be positive");
    const std::size_t n = roots.roots.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const BigComplex zi = roots.roots[i].value();
        for (std::size_t j = i + 1; j < n; ++j) {
            if ((zi - roots.roots[j].value()).abs().to_double() <= tol) parent[find(i)] = find(j);
        }
    }
    std::vector<RootCluster> out;
    std::vector<std::size_t> slot(n, n);
    std::vector<std::vector<std::size_t>> members;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = find(i);
        if (slot[r] == n) {
            slot[r] = members.size();
            members.emplace_back();
        }
        members[slot[r]].push_back(i);
    }
    for (const auto& group : members) {
        const auto& first = roots.roots[group.front()];
        BigComplex mean(first.precision_bits);
        double resid = 0.0;
        double err = 0.0;
        for (auto i : group) {
            mean = mean + roots.roots[i].value();
            resid = std::max(resid, roots.roots[i].residual_bound);
            err = std::max(err, roots.roots[i].error_radius);
        }
        const BigFloat count(static_cast<double>(group.size()), first.precision_bits);
        mean.re /= count;
        mean.im /= count;
        out.push_back({ComplexApprox{mean.re, mean.im, first.precision_bits, resid, err},
                       static_cast<unsigned>(group.size())});
    }
    return out;
}

RootSet exclude_point(const RootSet& roots, const BigComplex& q, double tol) {
    if (!(tol > 0)) throw PreconditionError("exclusion tolerance must be positive");
    RootSet out;
    for (const auto& r : roots.roots) {
        if ((r.value() - q).abs().to_double() <= tol) continue;
        out.roots.push_back(r);
    }
    out.defining_degree = out.roots.size();
    return out;
}

RootSet exclude_point(const RootSet& roots, std::complex<double> q, double tol) {
    const mpfr_prec_t prec = roots.roots.empty() ? 64 : roots.roots.front().precision_bits;
    return exclude_point(roots, BigComplex(q, prec), tol);
}

}  // namespace morphic
