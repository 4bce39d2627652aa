#include "morphic/dynatomic.hpp"

#include <map>

#include "morphic/errors.hpp"
#include "morphic/prime_power.hpp"

namespace morphic {

int moebius(unsigned n) {
    if (n == 0) throw PreconditionError("Moebius function at 0");
    int mu = 1;
    for (unsigned q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        n /= q;
        if (n % q == 0) return 0;
        mu = -mu;
    }
    return n > 1 ? -mu : mu;
}

std::vector<unsigned> divisors(unsigned n) {
    std::vector<unsigned> out;
    for (unsigned k = 1; k <= n; ++k) {
        if (n % k == 0) out.push_back(k);
    }
    return out;
}

std::vector<long> moebius_transform(const std::vector<unsigned>& a) {
    std::vector<long> out(a.size(), 0);
    for (unsigned n = 1; n <= a.size(); ++n) {
        for (unsigned m : divisors(n)) out[n - 1] += moebius(n / m) * static_cast<long>(a[m - 1]);
    }
    return out;
}

unsigned multiplicity_a_n(const Polynomial& f, const Rational& xi, unsigned n, std::size_t degree_cap) {
    return root_multiplicity(periodic_polynomial(f, n, degree_cap), xi);
}

unsigned multiplicity_a_n(const FpPolynomial& f, std::uint64_t xi, unsigned n, std::size_t degree_cap) {
    return root_multiplicity(periodic_polynomial(f, n, degree_cap), xi % f.prime());
}

long moebius_star(const Polynomial& f, const Rational& xi, unsigned n, std::size_t degree_cap) {
    long total = 0;
    for (unsigned m : divisors(n)) total += moebius(n / m) * static_cast<long>(multiplicity_a_n(f, xi, m, degree_cap));
    return total;
}

long moebius_star(const FpPolynomial& f, std::uint64_t xi, unsigned n, std::size_t degree_cap) {
    long total = 0;
    for (unsigned m : divisors(n)) total += moebius(n / m) * static_cast<long>(multiplicity_a_n(f, xi, m, degree_cap));
    return total;
}

std::optional<unsigned> least_period(const Polynomial& f, const Rational& xi, unsigned max_steps) {
    const OrbitClass oc = classify_orbit(f, xi, max_steps);
    if (oc.kind == OrbitKind::periodic && oc.preperiod == 0) return oc.period;
    return std::nullopt;
}

std::optional<unsigned> least_period(const FpPolynomial& f, std::uint64_t xi) {
    xi %= f.prime();
    std::uint64_t x = xi;
    for (std::uint64_t k = 1; k <= f.prime(); ++k) {
        x = f(x);
        if (x == xi) return static_cast<unsigned>(k);
    }
    return std::nullopt;
}

Rational multiplier(const Polynomial& f, const Rational& xi, unsigned m) {
    const auto period = least_period(f, xi);
    if (!period || *period != m) throw PreconditionError("point does not have least period " + std::to_string(m));
    const Polynomial df = f.derivative();
    Rational lambda(1);
    Rational x = xi;
    for (unsigned j = 0; j < m; ++j) {
        lambda *= df(x);
        x = f(x);
    }
    return lambda;
}

std::uint64_t multiplier(const FpPolynomial& f, std::uint64_t xi, unsigned m) {
    const auto period = least_period(f, xi);
    if (!period || *period != m) throw PreconditionError("point does not have least period " + std::to_string(m));
    const FpPolynomial df = f.derivative();
    const PrimeField& k = f.field();
    std::uint64_t lambda = 1;
    std::uint64_t x = xi % f.prime();
    for (unsigned j = 0; j < m; ++j) {
        lambda = k.mul(lambda, df(x));
        x = f(x);
    }
    return lambda;
}

std::optional<std::uint64_t> multiplier_order(const Rational& lambda) {
    if (lambda == 1) return 1;
    if (lambda == -1) return 2;
    return std::nullopt;
}

std::optional<std::uint64_t> multiplier_order(std::uint64_t lambda, const PrimeField& field) {
    lambda %= field.prime();
    if (lambda == 0) return std::nullopt;
    std::uint64_t order = field.prime() - 1;
    std::uint64_t rest = order;
    for (std::uint64_t q = 2; q * q <= rest; ++q) {
        if (rest % q) continue;
        while (rest % q == 0) rest /= q;
        while (order % q == 0 && field.pow(lambda, order / q) == 1) order /= q;
    }
    if (rest > 1) {
        while (order % rest == 0 && field.pow(lambda, order / rest) == 1) order /= rest;
    }
    return order;
}

bool EssentialPeriods::contains(std::uint64_t n) const {
    if (n == m) return true;
    if (!r) return false;
    const std::uint64_t mr = m * *r;
    if (n == mr) return true;
    if (characteristic == 0 || n % mr != 0) return false;
    std::uint64_t e = n / mr;
    if (e < characteristic) return false;
    while (e % characteristic == 0) e /= characteristic;
    return e == 1;
}

std::vector<unsigned> EssentialPeriods::up_to(unsigned n_max) const {
    std::vector<unsigned> out;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (contains(n)) out.push_back(n);
    }
    return out;
}

EssentialPeriods essential_periods_predicted(unsigned m, std::optional<std::uint64_t> r, std::uint64_t characteristic) {
    if (m == 0) throw PreconditionError("period must be positive");
    if (r && *r == 0) throw PreconditionError("multiplier order must be positive");
    return {m, r, characteristic};
}

namespace {

template <class Poly, class Point>
std::vector<unsigned> multiplicities_up_to(const Poly& f, const Point& xi, unsigned n_max, std::size_t degree_cap,
                                           const Poly& identity) {
    std::vector<unsigned> a;
    Poly g = identity;
    for (unsigned n = 1; n <= n_max; ++n) {
        g = compose(f, g);
        if (static_cast<std::size_t>(g.degree()) > degree_cap) {
            throw ResourceError("iterate degree " + std::to_string(g.degree()) + " exceeds cap " +
                                std::to_string(degree_cap));
        }
        a.push_back(root_multiplicity(g - identity, xi));
    }
    return a;
}

}  // namespace

std::vector<unsigned> essential_periods_observed(const FpPolynomial& f, std::uint64_t xi, unsigned n_max,
                                                 std::size_t degree_cap) {
    const auto a = multiplicities_up_to(f, xi % f.prime(), n_max, degree_cap, FpPolynomial::identity(f.prime()));
    const auto star = moebius_transform(a);
    std::vector<unsigned> out;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (star[n - 1] > 0) out.push_back(n);
    }
    return out;
}

std::vector<DynatomicRecord> dynatomic_records(const Polynomial& f, const Rational& xi, unsigned n_max,
                                               std::size_t degree_cap) {
    const auto a = multiplicities_up_to(f, xi, n_max, degree_cap, Polynomial::identity());
    const auto star = moebius_transform(a);
    const auto period = least_period(f, xi);
    std::optional<Rational> lambda;
    std::optional<std::uint64_t> order;
    if (period) {
        lambda = multiplier(f, xi, *period);
        order = multiplier_order(*lambda);
    }
    std::vector<DynatomicRecord> out;
    for (unsigned n = 1; n <= n_max; ++n) {
        DynatomicRecord rec;
        rec.field = "Q";
        rec.point = format_rational(xi);
        rec.n = n;
        rec.a_n = a[n - 1];
        rec.a_star_n = star[n - 1];
        rec.least_period = period;
        if (lambda) rec.multiplier = format_rational(*lambda);
        rec.multiplier_order = order;
        rec.predicted_essential = period && essential_periods_predicted(*period, order, 0).contains(n);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<DynatomicRecord> dynatomic_records(const FpPolynomial& f, std::uint64_t xi, unsigned n_max,
                                               std::size_t degree_cap) {
    xi %= f.prime();
    const auto a = multiplicities_up_to(f, xi, n_max, degree_cap, FpPolynomial::identity(f.prime()));
    const auto star = moebius_transform(a);
    const auto period = least_period(f, xi);
    std::optional<std::uint64_t> lambda;
    std::optional<std::uint64_t> order;
    if (period) {
        lambda = multiplier(f, xi, *period);
        order = multiplier_order(*lambda, f.field());
    }
    std::vector<DynatomicRecord> out;
    for (unsigned n = 1; n <= n_max; ++n) {
        DynatomicRecord rec;
        rec.field = std::to_string(f.prime());
        rec.point = std::to_string(xi);
        rec.n = n;
        rec.a_n = a[n - 1];
        rec.a_star_n = star[n - 1];
        rec.least_period = period;
        if (lambda) rec.multiplier = std::to_string(*lambda);
        rec.multiplier_order = order;
        rec.predicted_essential = period && essential_periods_predicted(*period, order, f.prime()).contains(n);
        out.push_back(std::move(rec));
    }
    return out;
}

bool reduction_multiplicity_check(const Polynomial& f, std::uint64_t p, const std::vector<Rational>& points, unsigned n,
                                  std::size_t degree_cap) {
    if (!good_reduction(f, p)) throw BadReductionError(f.to_string() + " has bad reduction at " + std::to_string(p));
    if (points.empty()) return true;
    const Polynomial fn = periodic_polynomial(f, n, degree_cap);
    const FpPolynomial fn_bar = periodic_polynomial(reduce_mod_p(f, p), n, degree_cap);
    const Integer modulus(static_cast<unsigned long>(p));
    std::map<std::uint64_t, unsigned> lifted;
    for (const auto& xi : points) {
        if (valuation(xi, p) < Valuation(0)) throw PreconditionError("point is not p-integral");
        lifted[reduce_mod(xi, modulus).get_ui()] += root_multiplicity(fn, xi);
    }
    for (const auto& [rho, total] : lifted) {
        if (total > root_multiplicity(fn_bar, rho)) return false;
    }
    return true;
}

}  // namespace morphic
