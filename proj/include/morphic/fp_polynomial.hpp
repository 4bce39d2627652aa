#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "morphic/polynomial.hpp"

namespace morphic {

/// Arithmetic in the prime field F_p, elements stored as residues in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint64_t p);

    std::uint64_t prime() const { return p_; }
    std::uint64_t reduce(std::int64_t v) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p_);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const;
    std::uint64_t inverse(std::uint64_t a) const;

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    std::uint64_t p_;
};

/// Polynomial over F_p, ascending degree, no trailing zeros.
class FpPolynomial {
public:
    using value_type = std::uint64_t;

    explicit FpPolynomial(std::uint64_t p, std::vector<std::uint64_t> coeffs = {});

    static FpPolynomial identity(std::uint64_t p);

    const PrimeField& field() const { return field_; }
    std::uint64_t prime() const { return field_.prime(); }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    const std::vector<std::uint64_t>& coeffs() const { return coeffs_; }
    std::uint64_t coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }

    std::uint64_t operator()(std::uint64_t x) const;
    FpPolynomial derivative() const;

    friend FpPolynomial operator+(const FpPolynomial& a, const FpPolynomial& b);
    friend FpPolynomial operator-(const FpPolynomial& a, const FpPolynomial& b);
    friend FpPolynomial operator*(const FpPolynomial& a, const FpPolynomial& b);
    friend bool operator==(const FpPolynomial& a, const FpPolynomial& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

    std::string to_string() const;

private:
    void trim();

    PrimeField field_;
    std::vector<std::uint64_t> coeffs_;
};

FpPolynomial compose(const FpPolynomial& f, const FpPolynomial& g);
FpPolynomial iterate(const FpPolynomial& f, unsigned n, std::size_t degree_cap = kDefaultDegreeCap);
FpPolynomial periodic_polynomial(const FpPolynomial& f, unsigned n, std::size_t degree_cap = kDefaultDegreeCap);
unsigned root_multiplicity(const FpPolynomial& f, std::uint64_t xi);

/// Coefficientwise reduction; throws BadReductionError if some coefficient
/// has negative p-valuation.
FpPolynomial reduce_mod_p(const Polynomial& f, std::uint64_t p);

}  // namespace morphic
