#include "morphic/fp_polynomial.hpp"

#include <sstream>

#include "morphic/errors.hpp"

namespace morphic {

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::reduce(std::int64_t v) const {
    const auto m = static_cast<std::int64_t>(p_);
    auto r = v % m;
    if (r < 0) r += m;
    return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t result = 1 % p_;
    a %= p_;
    while (e > 0) {
        if (e & 1) result = mul(result, a);
        a = mul(a, a);
        e >>= 1;
    }
    return result;
}

std::uint64_t PrimeField::inverse(std::uint64_t a) const {
    if (a % p_ == 0) throw PreconditionError("zero has no inverse in F_p");
    return pow(a, p_ - 2);
}

FpPolynomial::FpPolynomial(std::uint64_t p, std::vector<std::uint64_t> coeffs)
    : field_(p), coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c %= p;
    trim();
}

FpPolynomial FpPolynomial::identity(std::uint64_t p) { return FpPolynomial(p, {0, 1}); }

void FpPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::uint64_t FpPolynomial::operator()(std::uint64_t x) const {
    std::uint64_t acc = 0;
    x %= prime();
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
}

FpPolynomial FpPolynomial::derivative() const {
    std::vector<std::uint64_t> out;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) out.push_back(field_.mul(coeffs_[i], i % prime()));
    return FpPolynomial(prime(), std::move(out));
}

FpPolynomial operator+(const FpPolynomial& a, const FpPolynomial& b) {
    std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_.add(a.coeff(i), b.coeff(i));
    return FpPolynomial(a.prime(), std::move(out));
}

FpPolynomial operator-(const FpPolynomial& a, const FpPolynomial& b) {
    std::vector<std::uint64_t> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.field_.sub(a.coeff(i), b.coeff(i));
    return FpPolynomial(a.prime(), std::move(out));
}

FpPolynomial operator*(const FpPolynomial& a, const FpPolynomial& b) {
    if (a.is_zero() || b.is_zero()) return FpPolynomial(a.prime());
    const std::uint64_t p = a.prime();
    // Accumulate in 128 bits and reduce once per output slot.
    std::vector<unsigned __int128> acc(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            acc[i + j] += static_cast<unsigned __int128>(a.coeffs_[i]) * b.coeffs_[j];
        }
    }
    std::vector<std::uint64_t> out(acc.size());
    for (std::size_t i = 0; i < acc.size(); ++i) out[i] = static_cast<std::uint64_t>(acc[i] % p);
    return FpPolynomial(p, std::move(out));
}

std::string FpPolynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        if (coeffs_[k] == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (k == 0 || coeffs_[k] != 1) os << coeffs_[k];
        if (k > 0) os << (coeffs_[k] != 1 ? "*x" : "x");
        if (k > 1) os << "^" << k;
    }
    return os.str() + " (mod " + std::to_string(prime()) + ")";
}

FpPolynomial compose(const FpPolynomial& f, const FpPolynomial& g) {
    FpPolynomial acc(f.prime());
    const auto& a = f.coeffs();
    for (std::size_t k = a.size(); k-- > 0;) acc = acc * g + FpPolynomial(f.prime(), {a[k]});
    return acc;
}

FpPolynomial iterate(const FpPolynomial& f, unsigned n, std::size_t degree_cap) {
    if (n == 0) return FpPolynomial::identity(f.prime());
    const int d = f.degree();
    if (d >= 2) {
        std::size_t total = 1;
        for (unsigned i = 0; i < n; ++i) {
            total *= static_cast<std::size_t>(d);
            if (total > degree_cap) throw ResourceError("iterate degree over F_p exceeds cap");
        }
    }
    FpPolynomial out = f;
    for (unsigned i = 1; i < n; ++i) out = compose(f, out);
    return out;
}

FpPolynomial periodic_polynomial(const FpPolynomial& f, unsigned n, std::size_t degree_cap) {
    return iterate(f, n, degree_cap) - FpPolynomial::identity(f.prime());
}

unsigned root_multiplicity(const FpPolynomial& f, std::uint64_t xi) {
    if (f.is_zero()) throw PreconditionError("root multiplicity of the zero polynomial");
    const auto& field = f.field();
    xi %= f.prime();
    std::vector<std::uint64_t> coeffs = f.coeffs();
    unsigned k = 0;
    while (coeffs.size() > 1) {
        std::vector<std::uint64_t> quot(coeffs.size() - 1);
        std::uint64_t carry = 0;
        for (std::size_t i = coeffs.size(); i-- > 0;) {
            const std::uint64_t next = field.add(coeffs[i], field.mul(carry, xi));
            if (i > 0) quot[i - 1] = next;
            carry = next;
        }
        if (carry != 0) break;
        coeffs = std::move(quot);
        ++k;
    }
    return k;
}

FpPolynomial reduce_mod_p(const Polynomial& f, std::uint64_t p) {
    const PrimeField field(p);
    const Integer modulus(static_cast<unsigned long>(p));
    std::vector<std::uint64_t> out;
    for (const auto& c : f.coeffs()) {
        if (valuation(c, p) < Valuation(0)) {
            throw BadReductionError("coefficient " + format_rational_short(c) + " has negative " +
                                    std::to_string(p) + "-adic valuation");
        }
        out.push_back(reduce_mod(c, modulus).get_ui());
    }
    return FpPolynomial(p, std::move(out));
}

}  // namespace morphic
