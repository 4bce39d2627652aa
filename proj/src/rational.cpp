#include "morphic/rational.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "morphic/errors.hpp"

namespace morphic {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

Integer parse_integer(std::string_view s) {
    std::string body(s);
    if (!body.empty() && body[0] == '+') body.erase(0, 1);
    return Integer(body, 10);
}

}  // namespace

Rational make_rational(const Integer& num, const Integer& den) {
    if (den == 0) throw InputError("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_integer_literal(num_text)) {
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    if (slash == std::string_view::npos) return Rational(parse_integer(num_text));
    const auto den_text = text.substr(slash + 1);
    if (!is_integer_literal(den_text)) {
        throw InputError("malformed rational literal '" + std::string(text) + "'");
    }
    return make_rational(parse_integer(num_text), parse_integer(den_text));
}

std::string format_rational(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string format_rational_short(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return format_rational(q);
}

std::int64_t Valuation::value() const {
    if (infinite_) throw PreconditionError("valuation of zero is infinite");
    return value_;
}

std::string Valuation::to_string() const {
    return infinite_ ? std::string("inf") : std::to_string(value_);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    const Integer z(static_cast<unsigned long>(n));
    // BPSW is definitive below 2^64.
    return mpz_probab_prime_p(z.get_mpz_t(), 30) > 0;
}

Valuation valuation(const Integer& z, std::uint64_t p) {
    if (z == 0) return Valuation::infinite();
    Integer rest;
    const Integer prime(static_cast<unsigned long>(p));
    const auto v = mpz_remove(rest.get_mpz_t(), z.get_mpz_t(), prime.get_mpz_t());
    return Valuation(static_cast<std::int64_t>(v));
}

Valuation valuation(const Rational& q, std::uint64_t p) {
    if (q == 0) return Valuation::infinite();
    return Valuation(valuation(q.get_num(), p).value() - valuation(q.get_den(), p).value());
}

double log_abs(const Integer& z) {
    if (z == 0) return -std::numeric_limits<double>::infinity();
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
    return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::log(2.0);
}

double log_abs(const Rational& q) {
    if (q == 0) return -std::numeric_limits<double>::infinity();
    return log_abs(q.get_num()) - log_abs(q.get_den());
}

Integer power(const Integer& base, std::uint64_t exponent) {
    Integer out;
    mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exponent));
    return out;
}

Rational power(const Rational& base, std::uint64_t exponent) {
    Rational out(power(base.get_num(), exponent), power(base.get_den(), exponent));
    out.canonicalize();
    return out;
}

Integer reduce_mod(const Rational& q, const Integer& modulus) {
    Integer inverse;
    if (mpz_invert(inverse.get_mpz_t(), q.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
        throw PreconditionError("denominator is not invertible modulo " + modulus.get_str());
    }
    Integer out = (q.get_num() * inverse) % modulus;
    if (out < 0) out += modulus;
    return out;
}

}  // namespace morphic
