#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace morphic {

using Integer = mpz_class;

// mpq_class keeps every arithmetic result in lowest terms with a positive
// denominator; values built from raw num/den pairs go through make_rational.
using Rational = mpq_class;

Rational make_rational(const Integer& num, const Integer& den);

/// Parses "num/den" or "num" (optional sign, decimal digits). Throws InputError.
Rational parse_rational(std::string_view text);

/// Lossless "num/den" form, used in every CSV and JSON output.
std::string format_rational(const Rational& q);

/// Short form: "num" for integers, "num/den" otherwise.
std::string format_rational_short(const Rational& q);

/// p-adic valuation, an integer or +infinity (the valuation of zero).
class Valuation {
public:
    constexpr Valuation(std::int64_t v = 0) : value_(v) {}
    static constexpr Valuation infinite() {
        Valuation v;
        v.infinite_ = true;
        return v;
    }

    constexpr bool is_infinite() const { return infinite_; }
    std::int64_t value() const;

    friend constexpr bool operator==(const Valuation& a, const Valuation& b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }
    friend constexpr std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) {
            return static_cast<int>(a.infinite_) <=> static_cast<int>(b.infinite_);
        }
        return a.value_ <=> b.value_;
    }
    friend Valuation operator+(const Valuation& a, const Valuation& b) {
        if (a.infinite_ || b.infinite_) return infinite();
        return Valuation(a.value_ + b.value_);
    }

    std::string to_string() const;

private:
    std::int64_t value_ = 0;
    bool infinite_ = false;
};

bool is_prime(std::uint64_t n);

Valuation valuation(const Integer& z, std::uint64_t p);
Valuation valuation(const Rational& q, std::uint64_t p);

/// log|q| at the archimedean place; -infinity for q = 0. Exact inputs of any
/// size are handled without overflow.
double log_abs(const Rational& q);
double log_abs(const Integer& z);

Integer power(const Integer& base, std::uint64_t exponent);
Rational power(const Rational& base, std::uint64_t exponent);

/// Image of q in Z/p^K; requires v_p(q) >= 0.
Integer reduce_mod(const Rational& q, const Integer& modulus);

}  // namespace morphic
