#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "morphic/complex_rational.hpp"
#include "morphic/polynomial.hpp"
#include "morphic/rootfinder.hpp"

namespace morphic {

enum class HeightMethod { iterate, periodic_sum, backward_integral, closed_form };
std::string to_string(HeightMethod m);

enum class OrbitVerdict { escaping, bounded, indeterminate };
std::string to_string(OrbitVerdict v);

struct HeightEstimate {
    double value = 0.0;
    HeightMethod method = HeightMethod::iterate;
    unsigned depth_n = 1;
    double error_hint = 0.0;
    OrbitVerdict verdict = OrbitVerdict::escaping;
    std::size_t excluded = 0;  // roots or samples dropped next to q
};

struct IterateOptions {
    double tol = 1e-13;
    unsigned max_iterations = 10000;
};

/// lim d^{-n} log+|f^{(n)}(q)| by the Green's-function series once the orbit
/// passes max(escape radius, 10). Orbits that stay inside the escape radius
/// for max_iterations steps get value 0 and the bounded verdict.
HeightEstimate height_iterate(const Polynomial& f, std::complex<double> q, const IterateOptions& options = {});

/// d^{-n} (sum over x != q with f^{(n)}(x) = x of log|x - q|, plus log|B_n|).
/// When q is exactly periodic with period dividing n, roots within
/// 2^{-precision_bits/4} of q are excluded.
HeightEstimate height_periodic_sum(const Polynomial& f, const ComplexRational& q, unsigned n,
                                   mpfr_prec_t precision_bits = 128);
/// Same sum over periodic points already computed by find_periodic_points(f, n).
HeightEstimate height_periodic_sum(const Polynomial& f, const ComplexRational& q, unsigned n, const RootSet& roots);

struct IdentitySides {
    double lhs = 0.0;  // d^{-n} log|f^{(n)}(q) - q|, from exact arithmetic
    double rhs = 0.0;  // d^{-n} (sum log|x - q| + log|B_n|), from the roots
};

/// Both sides of the product decomposition of f^{(n)}(x) - x at x = q.
/// Throws PreconditionError when f^{(n)}(q) = q.
IdentitySides periodic_sum_identity(const Polynomial& f, const ComplexRational& q, unsigned n,
                                    mpfr_prec_t precision_bits = 128);
IdentitySides periodic_sum_identity(const Polynomial& f, const ComplexRational& q, unsigned n, const RootSet& roots);

struct MeasureSample {
    std::vector<std::complex<double>> points;
    unsigned depth = 0;
    std::uint64_t seed = 0;
};

/// Backward orbits of the base point escape_radius * e^{i/2}, each step taking
/// one of the d preimages uniformly at random.
MeasureSample sample_maximal_measure(const Polynomial& f, unsigned depth, std::size_t count, std::uint64_t seed);

/// All d solutions of f(w) = z, sorted by argument.
std::vector<std::complex<double>> preimages(const Polynomial& f, std::complex<double> z);

inline constexpr double kSampleExclusionRadius = 1e-12;

/// (1/(d-1)) log|a| + mean of log|x - q| over the sample.
HeightEstimate height_backward_integral(const Polynomial& f, std::complex<double> q, const MeasureSample& sample);

struct PullbackSides {
    double lhs = 0.0;  // potential at f(q)
    double rhs = 0.0;  // d times the potential at q
};

/// Requires f monic.
PullbackSides pullback_invariance_check(const Polynomial& f, std::complex<double> q, const MeasureSample& sample);

/// log+|psi(q)| with psi(q) = q + sqrt(q^2 - 1) on the branch |psi| >= 1.
HeightEstimate chebyshev_closed_form(unsigned d, std::complex<double> q);
/// log+|q|.
HeightEstimate power_map_height(unsigned d, std::complex<double> q);

}  // namespace morphic
