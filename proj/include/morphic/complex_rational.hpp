#pragma once

#include <complex>
#include <string>

#include "morphic/polynomial.hpp"
#include "morphic/rational.hpp"

namespace morphic {

/// Exact Gaussian rational re + im*i. Points q are carried in this form so
/// that periodicity tests and f_n(q) are exact.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(Rational real) : re(std::move(real)) {}
    ComplexRational(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

    /// Exact conversion; every finite double is a dyadic rational.
    static ComplexRational from_complex(std::complex<double> z);

    bool is_real() const { return im == 0; }
    bool is_zero() const { return re == 0 && im == 0; }
    Rational norm() const { return re * re + im * im; }
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
    std::string to_string() const;

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

Rational exact_rational(double v);

ComplexRational evaluate(const Polynomial& f, const ComplexRational& z);

/// log|z|; -infinity at zero.
double log_abs(const ComplexRational& z);

}  // namespace morphic
