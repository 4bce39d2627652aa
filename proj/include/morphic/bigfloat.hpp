#pragma once

#include <complex>
#include <string>

#include <mpfr.h>

#include "morphic/rational.hpp"

namespace morphic {

/// RAII wrapper around an MPFR value. Binary operations round to the larger
/// of the two operand precisions. The exponent range is widened to the MPFR
/// maximum so escaping orbits never overflow.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t precision = 64);
    BigFloat(double v, mpfr_prec_t precision);
    BigFloat(const Rational& q, mpfr_prec_t precision);  // correctly rounded
    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
    /// Rounds in place to a new precision.
    void set_precision(mpfr_prec_t precision);

    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(value_, rnd); }
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    bool is_finite() const { return mpfr_number_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }
    std::string to_string(int digits = 20) const;

    mpfr_ptr raw() { return value_; }
    mpfr_srcptr raw() const { return value_; }

    BigFloat& operator+=(const BigFloat& rhs);
    BigFloat& operator-=(const BigFloat& rhs);
    BigFloat& operator*=(const BigFloat& rhs);
    BigFloat& operator/=(const BigFloat& rhs);

    friend BigFloat operator+(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator/(const BigFloat& a, const BigFloat& b);
    friend BigFloat operator-(const BigFloat& a);
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.value_, b.value_) != 0; }
    friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.value_, b.value_) != 0; }

private:
    mpfr_t value_;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);

/// Complex number over BigFloat components.
struct BigComplex {
    BigFloat re;
    BigFloat im;

    explicit BigComplex(mpfr_prec_t precision = 64) : re(precision), im(precision) {}
    BigComplex(BigFloat real, BigFloat imag) : re(std::move(real)), im(std::move(imag)) {}
    BigComplex(std::complex<double> z, mpfr_prec_t precision) : re(z.real(), precision), im(z.imag(), precision) {}
    BigComplex(const Rational& real, const Rational& imag, mpfr_prec_t precision)
        : re(real, precision), im(imag, precision) {}

    mpfr_prec_t precision() const { return re.precision(); }
    void set_precision(mpfr_prec_t precision) {
        re.set_precision(precision);
        im.set_precision(precision);
    }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    BigFloat norm() const { return re * re + im * im; }
    BigFloat abs() const { return sqrt(norm()); }
    /// log|z|, computed as log(|z|^2)/2 without the square root.
    BigFloat log_abs() const;

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }
    friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend BigComplex operator/(const BigComplex& a, const BigComplex& b);
};

}  // namespace morphic
