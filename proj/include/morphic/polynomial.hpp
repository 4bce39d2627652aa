#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "morphic/rational.hpp"

namespace morphic {

/// Default bound on d^n for materialized iterates.
inline constexpr std::size_t kDefaultDegreeCap = std::size_t{1} << 16;

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector and has degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    Polynomial(std::initializer_list<Rational> coeffs);

    static Polynomial constant(const Rational& c);
    static Polynomial identity();
    static Polynomial monomial(const Rational& c, std::size_t k);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    bool is_monic() const { return !is_zero() && leading() == 1; }

    const std::vector<Rational>& coeffs() const { return coeffs_; }
    /// Coefficient of x^i; zero beyond the degree.
    Rational coeff(std::size_t i) const;
    const Rational& leading() const;

    Rational operator()(const Rational& x) const;
    Polynomial derivative() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Rational& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

    /// Human readable form, e.g. "x^2 + 1/2*x".
    std::string to_string() const;

private:
    void trim();

    std::vector<Rational> coeffs_;
};

Polynomial compose(const Polynomial& f, const Polynomial& g);

/// f^{(n)}; f^{(0)} is the identity. Throws ResourceError when d^n exceeds the cap.
Polynomial iterate(const Polynomial& f, unsigned n, std::size_t degree_cap = kDefaultDegreeCap);

/// f^{(n)}(x) - x, the polynomial whose roots are the points of period n.
Polynomial periodic_polynomial(const Polynomial& f, unsigned n, std::size_t degree_cap = kDefaultDegreeCap);

struct DivisionResult {
    Polynomial quotient;
    Polynomial remainder;
};

/// Exact long division f = q*g + r with deg r < deg g. Throws PreconditionError for g = 0.
DivisionResult divide(const Polynomial& f, const Polynomial& g);

/// Largest k with (x - xi)^k | f, by repeated synthetic division.
unsigned root_multiplicity(const Polynomial& f, const Rational& xi);

/// f(x + shift) expanded in x.
Polynomial taylor_shift(const Polynomial& f, const Rational& shift);

/// sigma o f o sigma^{-1} for sigma(x) = alpha*x + beta.
Polynomial conjugate_linear(const Polynomial& f, const Rational& alpha, const Rational& beta);

/// Data for the leading coefficient B_n = a^{(d^n - 1)/(d - 1)} of f^{(n)},
/// available without materializing the iterate.
struct LeadingCoefficientPower {
    Rational leading;      // a
    unsigned degree = 0;   // d
    unsigned depth = 0;    // n
    Integer exponent;      // (d^n - 1)/(d - 1)

    /// exponent / d^n, the factor in front of log|a| after normalization.
    Rational normalized_exponent() const;
    double log_magnitude() const;             // log|B_n|
    double normalized_log_magnitude() const;  // (1/d^n) log|B_n|
    Integer valuation(std::uint64_t p) const; // v_p(B_n); requires a != 0
};

LeadingCoefficientPower leading_coefficient_power(const Polynomial& f, unsigned n);

/// Polynomial text form: JSON array of coefficient strings, ascending degree.
Polynomial parse_polynomial_json(std::string_view json_text);
std::string format_polynomial_json(const Polynomial& f);

/// 1 + max_{i<d} |a_i|/|a_d|, the classical bound on root moduli.
double cauchy_radius(const Polynomial& f);

/// Radius R >= cauchy_radius(f) with |f(z)| >= 2|z| whenever |z| > R, so
/// every orbit leaving the closed disk escapes to infinity.
double escape_radius(const Polynomial& f);

/// Same bound as escape_radius, as an exact rational for exact orbit tests.
Rational escape_radius_exact(const Polynomial& f);

enum class OrbitKind { periodic, preperiodic, wandering, unknown };

struct OrbitClass {
    OrbitKind kind = OrbitKind::unknown;
    unsigned period = 0;      // least period of the eventual cycle (periodic/preperiodic)
    unsigned preperiod = 0;   // steps before entering the cycle
};

/// Exact classification of the forward orbit of a rational point. A point is
/// declared wandering once an iterate leaves the escape disk or acquires a
/// denominator prime at which f has good reduction.
OrbitClass classify_orbit(const Polynomial& f, const Rational& q, unsigned max_steps = 256,
                          std::size_t max_bits = 1u << 16);

}  // namespace morphic
