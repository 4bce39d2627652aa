#include "morphic/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <json.hpp>

#include "morphic/errors.hpp"

namespace morphic {

Polynomial::Polynomial(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

Polynomial::Polynomial(std::initializer_list<Rational> coeffs)
    : Polynomial(std::vector<Rational>(coeffs)) {}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::identity() { return Polynomial({Rational(0), Rational(1)}); }

Polynomial Polynomial::monomial(const Rational& c, std::size_t k) {
    std::vector<Rational> coeffs(k + 1);
    coeffs[k] = c;
    return Polynomial(std::move(coeffs));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Rational Polynomial::coeff(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : Rational(0);
}

const Rational& Polynomial::leading() const {
    if (coeffs_.empty()) throw PreconditionError("zero polynomial has no leading coefficient");
    return coeffs_.back();
}

Rational Polynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial Polynomial::derivative() const {
    if (coeffs_.size() <= 1) return {};
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        out[i - 1] = coeffs_[i] * static_cast<unsigned long>(i);
    }
    return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] += rhs.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    if (rhs.coeffs_.size() > coeffs_.size()) coeffs_.resize(rhs.coeffs_.size());
    for (std::size_t i = 0; i < rhs.coeffs_.size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
    trim();
    return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
    for (auto& a : coeffs_) a *= c;
    trim();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return Polynomial(std::move(out));
}

std::string Polynomial::to_string() const {
    if (coeffs_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = coeffs_.size(); k-- > 0;) {
        const Rational& c = coeffs_[k];
        if (c == 0) continue;
        Rational mag = abs(c);
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        const bool unit = (mag == 1);
        if (k == 0 || !unit) os << format_rational_short(mag);
        if (k > 0) {
            if (!unit) os << "*";
            os << "x";
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

Polynomial compose(const Polynomial& f, const Polynomial& g) {
    if (f.is_zero()) return {};
    const auto& a = f.coeffs();
    Polynomial acc = Polynomial::constant(a.back());
    for (std::size_t k = a.size() - 1; k-- > 0;) {
        acc = acc * g;
        acc += Polynomial::constant(a[k]);
    }
    return acc;
}

Polynomial iterate(const Polynomial& f, unsigned n, std::size_t degree_cap) {
    if (n == 0) return Polynomial::identity();
    const int d = f.degree();
    if (d >= 2) {
        std::size_t total = 1;
        for (unsigned i = 0; i < n; ++i) {
            total *= static_cast<std::size_t>(d);
            if (total > degree_cap) {
                throw ResourceError("iterate degree " + std::to_string(d) + "^" + std::to_string(n) +
                                    " exceeds cap " + std::to_string(degree_cap));
            }
        }
    }
    Polynomial out = f;
    for (unsigned i = 1; i < n; ++i) out = compose(f, out);
    return out;
}

Polynomial periodic_polynomial(const Polynomial& f, unsigned n, std::size_t degree_cap) {
    return iterate(f, n, degree_cap) - Polynomial::identity();
}

DivisionResult divide(const Polynomial& f, const Polynomial& g) {
    if (g.is_zero()) throw PreconditionError("division by the zero polynomial");
    if (f.degree() < g.degree()) return {Polynomial{}, f};
    std::vector<Rational> rem = f.coeffs();
    const auto& b = g.coeffs();
    const std::size_t dg = b.size() - 1;
    std::vector<Rational> quot(rem.size() - dg);
    const Rational inv_lead = 1 / b.back();
    for (std::size_t k = quot.size(); k-- > 0;) {
        const Rational c = rem[k + dg] * inv_lead;
        quot[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j <= dg; ++j) rem[k + j] -= c * b[j];
    }
    rem.resize(dg);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

namespace {

// Divides by (x - xi); returns the remainder f(xi).
Rational synthetic_divide(std::vector<Rational>& coeffs, const Rational& xi) {
    Rational carry(0);
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        Rational next = coeffs[k] + carry * xi;
        coeffs[k] = carry;
        carry = std::move(next);
    }
    // coeffs[k] now holds the quotient coefficient of x^k; the top slot is empty.
    coeffs.pop_back();
    return carry;
}

}  // namespace

unsigned root_multiplicity(const Polynomial& f, const Rational& xi) {
    if (f.is_zero()) throw PreconditionError("root multiplicity of the zero polynomial");
    std::vector<Rational> coeffs = f.coeffs();
    unsigned k = 0;
    while (coeffs.size() > 1) {
        std::vector<Rational> trial = coeffs;
        if (synthetic_divide(trial, xi) != 0) break;
        coeffs = std::move(trial);
        ++k;
    }
    return k;
}

Polynomial taylor_shift(const Polynomial& f, const Rational& shift) {
    return compose(f, Polynomial({shift, Rational(1)}));
}

Polynomial conjugate_linear(const Polynomial& f, const Rational& alpha, const Rational& beta) {
    if (alpha == 0) throw PreconditionError("conjugation by a degenerate linear map");
    const Polynomial inverse({-beta / alpha, 1 / alpha});
    return compose(f, inverse) * alpha + Polynomial::constant(beta);
}

Rational LeadingCoefficientPower::normalized_exponent() const {
    Rational out(exponent, power(Integer(degree), depth));
    out.canonicalize();
    return out;
}

double LeadingCoefficientPower::log_magnitude() const {
    return exponent.get_d() * log_abs(leading);
}

double LeadingCoefficientPower::normalized_log_magnitude() const {
    return normalized_exponent().get_d() * log_abs(leading);
}

Integer LeadingCoefficientPower::valuation(std::uint64_t p) const {
    return exponent * Integer(static_cast<long>(morphic::valuation(leading, p).value()));
}

LeadingCoefficientPower leading_coefficient_power(const Polynomial& f, unsigned n) {
    const int d = f.degree();
    if (d < 2) throw PreconditionError("leading coefficient power needs degree >= 2");
    LeadingCoefficientPower out;
    out.leading = f.leading();
    out.degree = static_cast<unsigned>(d);
    out.depth = n;
    out.exponent = (power(Integer(d), n) - 1) / Integer(d - 1);
    return out;
}

Polynomial parse_polynomial_json(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("polynomial is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) throw InputError("polynomial must be a JSON array of coefficient strings");
    std::vector<Rational> coeffs;
    for (const auto& item : doc) {
        if (item.is_string()) {
            coeffs.push_back(parse_rational(item.get<std::string>()));
        } else if (item.is_number_integer()) {
            coeffs.push_back(parse_rational(std::to_string(item.get<long long>())));
        } else {
            throw InputError("polynomial coefficient must be a \"num/den\" string");
        }
    }
    return Polynomial(std::move(coeffs));
}

std::string format_polynomial_json(const Polynomial& f) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : f.coeffs()) arr.push_back(format_rational_short(c));
    if (f.is_zero()) arr.push_back("0");
    return arr.dump();
}

double cauchy_radius(const Polynomial& f) {
    if (f.degree() < 1) throw PreconditionError("root radius of a constant polynomial");
    Rational m(0);
    const Rational lead = abs(f.leading());
    for (int i = 0; i < f.degree(); ++i) m = std::max(m, Rational(abs(f.coeffs()[i]) / lead));
    return 1.0 + m.get_d();
}

Rational escape_radius_exact(const Polynomial& f) {
    if (f.degree() < 2) throw PreconditionError("escape radius needs degree >= 2");
    const Rational lead = abs(f.leading());
    Rational m(0);
    Rational s(0);
    for (int i = 0; i < f.degree(); ++i) {
        const Rational a = abs(f.coeffs()[i]);
        m = std::max(m, Rational(a / lead));
        s += a;
    }
    return std::max(Rational(1 + m), Rational((s + 2) / lead));
}

double escape_radius(const Polynomial& f) { return escape_radius_exact(f).get_d(); }

OrbitClass classify_orbit(const Polynomial& f, const Rational& q, unsigned max_steps, std::size_t max_bits) {
    const Rational radius = escape_radius_exact(f);
    // Primes outside `bad` give good reduction: coefficients integral, leading coefficient a unit.
    Integer bad = abs(f.leading().get_num());
    for (const auto& c : f.coeffs()) bad = lcm(bad, c.get_den());
    if (bad == 0) bad = 1;

    std::map<Rational, unsigned> seen;
    Rational x = q;
    for (unsigned step = 0; step <= max_steps; ++step) {
        auto [it, inserted] = seen.emplace(x, step);
        if (!inserted) {
            OrbitClass out;
            out.period = step - it->second;
            out.preperiod = it->second;
            out.kind = out.preperiod == 0 ? OrbitKind::periodic : OrbitKind::preperiodic;
            return out;
        }
        if (abs(x) > radius) return {OrbitKind::wandering, 0, 0};
        Integer den = x.get_den();
        for (Integer g = gcd(den, bad); g > 1; g = gcd(den, bad)) den /= g;
        if (den > 1) return {OrbitKind::wandering, 0, 0};
        if (mpz_sizeinbase(x.get_num().get_mpz_t(), 2) + mpz_sizeinbase(x.get_den().get_mpz_t(), 2) > max_bits) {
            break;
        }
        x = f(x);
    }
    return {OrbitKind::unknown, 0, 0};
}

}  // namespace morphic
