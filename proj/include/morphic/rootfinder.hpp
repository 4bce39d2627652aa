#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "morphic/bigfloat.hpp"
#include "morphic/complex_rational.hpp"
#include "morphic/errors.hpp"
#include "morphic/polynomial.hpp"

namespace morphic {

/// Approximate complex root. residual_bound dominates |p(root)| evaluated at
/// twice the working precision; error_radius is the last Newton step length.
struct ComplexApprox {
    BigFloat real;
    BigFloat imag;
    mpfr_prec_t precision_bits = 0;
    double residual_bound = 0.0;
    double error_radius = 0.0;

    BigComplex value() const { return {real, imag}; }
    std::complex<double> to_complex() const { return {real.to_double(), imag.to_double()}; }
};

struct RootSet {
    std::vector<ComplexApprox> roots;
    std::size_t defining_degree = 0;
};

struct Evaluation {
    BigComplex value;
    BigComplex derivative;
    double scale = 0.0;  // rounding-error scale of the evaluation at unit roundoff 1
};

using Evaluator = std::function<Evaluation(const BigComplex&)>;

/// Hardware-precision evaluation; long double for its wider exponent range.
struct DoubleEvaluation {
    std::complex<long double> value;
    std::complex<long double> derivative;
    long double scale = 0.0;
};

/// A polynomial known through an evaluator rather than (necessarily) its coefficients.
class RootTarget {
public:
    virtual ~RootTarget() = default;
    virtual std::size_t degree() const = 0;
    virtual double initial_radius() const = 0;
    /// Starting approximations; defaults to equispaced points on the initial circle.
    virtual std::vector<std::complex<double>> initial_points() const;
    /// Evaluator whose constants are rounded once to `precision` bits.
    virtual Evaluator bind(mpfr_prec_t precision) const = 0;
    /// Plain double evaluation; may overflow, in which case callers fall back to bind().
    virtual DoubleEvaluation evaluate_double(std::complex<double> z) const = 0;
    /// Lower bound for the residual scale in the noise and certification tests.
    virtual double scale_floor() const = 0;
};

/// Polynomial given by exact rational coefficients.
class CoefficientTarget : public RootTarget {
public:
    explicit CoefficientTarget(Polynomial f);
    std::size_t degree() const override;
    double initial_radius() const override;
    Evaluator bind(mpfr_prec_t precision) const override;
    DoubleEvaluation evaluate_double(std::complex<double> z) const override;
    double scale_floor() const override;

private:
    Polynomial f_;
    std::vector<long double> coeffs_;
};

/// f^{(n)}(z) - z evaluated by iterating f, derivative by the chain rule.
/// Starts from the d^n preimages under f^{(n)} of a point on the escape circle.
class PeriodicPointTarget : public RootTarget {
public:
    PeriodicPointTarget(Polynomial f, unsigned n);
    std::size_t degree() const override;
    double initial_radius() const override;
    std::vector<std::complex<double>> initial_points() const override;
    Evaluator bind(mpfr_prec_t precision) const override;
    DoubleEvaluation evaluate_double(std::complex<double> z) const override;
    double scale_floor() const override { return 1.0; }

private:
    Polynomial f_;
    std::vector<long double> coeffs_;
    unsigned n_;
};

/// d equispaced points on |z| = radius, rotated by a fixed irrational angle.
std::vector<std::complex<double>> circle_points(std::size_t d, double radius);

/// All solutions of f(w) = c in double precision, sorted by argument.
std::vector<std::complex<double>> solve_preimages(const Polynomial& f, std::complex<double> c);

struct RootFinderOptions {
    mpfr_prec_t precision_bits = 128;
    mpfr_prec_t max_precision_bits = 4096;
    std::size_t max_iterations = 0;  // per precision level; 0 picks 200 + 2*degree
};

class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, RootSet best, std::vector<double> residuals)
        : Error(what), best_(std::move(best)), residuals_(std::move(residuals)) {}
    const RootSet& best() const { return best_; }
    const std::vector<double>& residuals() const { return residuals_; }

private:
    RootSet best_;
    std::vector<double> residuals_;
};

/// All roots by Aberth-Ehrlich iteration from the target's starting points,
/// first in double precision, then at the working precision. Every returned
/// root satisfies residual_bound <= 2^{-precision_bits/2} * scale and
/// error_radius <= 2^{-precision_bits/2-8} * max(1, |z|), both checked at twice
/// the working precision; the working precision doubles while either fails.
RootSet find_roots(const RootTarget& target, const RootFinderOptions& options = {});
RootSet find_roots(const Polynomial& f, mpfr_prec_t precision_bits = 128);

/// Roots of f^{(n)}(x) - x. Throws ResourceError when d^n exceeds degree_cap.
RootSet find_periodic_points(const Polynomial& f, unsigned n, mpfr_prec_t precision_bits = 128,
                             std::size_t degree_cap = kDefaultDegreeCap);

struct RootCluster {
    ComplexApprox representative;
    unsigned multiplicity = 0;
};

/// Single-linkage clusters of roots at distance <= tol; multiplicities sum to the root count.
std::vector<RootCluster> cluster_roots(const RootSet& roots, double tol);

/// Removes roots within tol of q.
RootSet exclude_point(const RootSet& roots, const BigComplex& q, double tol);
RootSet exclude_point(const RootSet& roots, std::complex<double> q, double tol);

}  // namespace morphic
