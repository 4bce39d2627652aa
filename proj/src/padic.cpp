#include "morphic/padic.hpp"

#include <cmath>
#include <map>

#include "morphic/errors.hpp"

namespace morphic {

PadicContext::PadicContext(std::uint64_t prime, unsigned k, bool use_log) : p(prime), truncation(k), natural_log(use_log) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    if (truncation == 0) throw PreconditionError("truncation must be positive");
}

double PadicContext::log_p() const { return natural_log ? std::log(static_cast<double>(p)) : 1.0; }

std::string to_string(PadicMethod m) {
    switch (m) {
        case PadicMethod::closed_form: return "closed_form";
        case PadicMethod::periodic_sum: return "periodic_sum";
        case PadicMethod::iterate: return "iterate";
    }
    return "unknown";
}

namespace {

void require_good_reduction(const Polynomial& f, std::uint64_t p) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    if (f.degree() < 2) throw PreconditionError("p-adic heights need degree >= 2");
    if (!good_reduction(f, p)) {
        throw BadReductionError(f.to_string() + " has bad reduction at " + std::to_string(p));
    }
}

Integer degree_power(const Polynomial& f, unsigned n) {
    return power(Integer(static_cast<unsigned long>(f.degree())), n);
}

PadicHeightResult make_result(const Polynomial& f, std::uint64_t p, unsigned n, const Integer& fn_valuation,
                              unsigned deflation) {
    PadicHeightResult out;
    out.method = PadicMethod::periodic_sum;
    out.depth_n = n;
    out.fn_valuation = fn_valuation;
    out.deflation = deflation;
    const Integer vb = leading_coefficient_power(f, n).valuation(p);
    out.value_in_valuation_units = make_rational(vb - fn_valuation, degree_power(f, n));
    out.value = out.value_in_valuation_units.get_d() * std::log(static_cast<double>(p));
    return out;
}

using Series = std::vector<Rational>;

Series truncated_product(const Series& a, const Series& b, std::size_t order) {
    Series out(order, Rational(0));
    for (std::size_t i = 0; i < order && i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < order && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// Least period of q when q is exactly periodic, otherwise 0.
unsigned exact_period(const Polynomial& f, const Rational& q) {
    const OrbitClass oc = classify_orbit(f, q);
    return oc.kind == OrbitKind::periodic && oc.preperiod == 0 ? oc.period : 0;
}

}  // namespace

PadicHeightResult local_height_padic(const Polynomial& f, std::uint64_t p, const Rational& q) {
    require_good_reduction(f, p);
    PadicHeightResult out;
    out.method = PadicMethod::closed_form;
    out.depth_n = 1;
    const Valuation v = valuation(q, p);
    out.value_in_valuation_units = (!v.is_infinite() && v.value() < 0) ? Rational(-v.value()) : Rational(0);
    out.value = out.value_in_valuation_units.get_d() * std::log(static_cast<double>(p));
    return out;
}

PadicHeightResult padic_iterate_height(const Polynomial& f, std::uint64_t p, const Rational& q, unsigned n,
                                       std::size_t max_bits) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    if (f.degree() < 2) throw PreconditionError("p-adic heights need degree >= 2");
    if (n == 0) throw PreconditionError("depth must be positive");
    Rational x = q;
    for (unsigned k = 0; k < n; ++k) {
        x = f(x);
        const std::size_t bits = mpz_sizeinbase(x.get_num_mpz_t(), 2) + mpz_sizeinbase(x.get_den_mpz_t(), 2);
        if (bits > max_bits) throw ResourceError("exact orbit exceeds " + std::to_string(max_bits) + " bits");
    }
    PadicHeightResult out;
    out.method = PadicMethod::iterate;
    out.depth_n = n;
    const Valuation v = valuation(x, p);
    const Integer neg = (!v.is_infinite() && v.value() < 0) ? Integer(static_cast<long>(-v.value())) : Integer(0);
    out.value_in_valuation_units = make_rational(neg, degree_power(f, n));
    out.value = out.value_in_valuation_units.get_d() * std::log(static_cast<double>(p));
    return out;
}

LocalExpansion periodic_local_expansion(const Polynomial& f, const Rational& q, unsigned n) {
    if (n == 0) throw PreconditionError("depth must be positive");
    std::vector<Rational> cycle{q};
    for (unsigned k = 0; k < n; ++k) cycle.push_back(f(cycle.back()));
    if (cycle.back() != q) throw PreconditionError("q is not periodic with period dividing n");

    std::map<Rational, Polynomial> shifted;
    for (unsigned k = 0; k < n; ++k) {
        if (!shifted.count(cycle[k])) shifted.emplace(cycle[k], taylor_shift(f, cycle[k]));
    }

    for (std::size_t order = 4; order <= 4096; order *= 2) {
        // D holds f^{(k)}(q + t) - f^{(k)}(q), truncated below t^order.
        Series dev(order, Rational(0));
        dev[1] = 1;
        for (unsigned k = 0; k < n; ++k) {
            const auto& g = shifted.at(cycle[k]).coeffs();
            Series acc(order, Rational(0));
            acc[0] = g.back();
            for (std::size_t i = g.size() - 1; i-- > 1;) {
                acc = truncated_product(acc, dev, order);
                acc[0] += g[i];
            }
            dev = truncated_product(acc, dev, order);
        }
        dev[1] -= 1;
        for (std::size_t i = 1; i < order; ++i) {
            if (dev[i] != 0) return {static_cast<unsigned>(i), dev[i]};
        }
    }
    throw ResourceError("order of vanishing at the periodic point exceeds 4096");
}

std::vector<PadicHeightResult> periodic_sum_padic_series(const Polynomial& f, std::uint64_t p, const Rational& q,
                                                         unsigned n_max) {
    require_good_reduction(f, p);
    std::vector<PadicHeightResult> out;
    if (n_max == 0) return out;
    const Valuation vq = valuation(q, p);

    if (!vq.is_infinite() && vq.value() < 0) {
        // Outside the unit disk the leading term dominates: v(f(x)) = d v(x).
        const std::int64_t v = vq.value();
        const int d = f.degree();
        for (int i = 0; i < d; ++i) {
            const Valuation vi = valuation(f.coeff(static_cast<std::size_t>(i)), p);
            if (!vi.is_infinite() && vi.value() + i * v <= d * v) {
                throw Error("valuation dominance failed outside the unit disk");
            }
        }
        Integer vn(static_cast<long>(v));
        for (unsigned n = 1; n <= n_max; ++n) {
            vn *= d;
            out.push_back(make_result(f, p, n, vn, 0));
        }
        return out;
    }

    const unsigned period = exact_period(f, q);
    const auto vals = return_valuations(f, q, p, n_max, period);
    for (unsigned n = 1; n <= n_max; ++n) {
        if (period != 0 && n % period == 0) {
            const LocalExpansion e = periodic_local_expansion(f, q, n);
            out.push_back(make_result(f, p, n, Integer(static_cast<long>(valuation(e.leading, p).value())), e.order));
        } else {
            out.push_back(make_result(f, p, n, Integer(static_cast<long>(*vals[n])), 0));
        }
    }
    return out;
}

PadicHeightResult periodic_sum_padic(const Polynomial& f, std::uint64_t p, const Rational& q, unsigned n) {
    if (n == 0) throw PreconditionError("depth must be positive");
    return periodic_sum_padic_series(f, p, q, n).back();
}

PadicHeightResult periodic_sum_padic_by_division(const Polynomial& f, std::uint64_t p, const Rational& q, unsigned n,
                                                 std::size_t degree_cap) {
    require_good_reduction(f, p);
    Polynomial fn = periodic_polynomial(f, n, degree_cap);
    const unsigned a = root_multiplicity(fn, q);
    const Polynomial linear{-q, Rational(1)};
    for (unsigned k = 0; k < a; ++k) {
        auto qr = divide(fn, linear);
        if (!qr.remainder.is_zero()) throw Error("inexact deflation at a periodic point");
        fn = std::move(qr.quotient);
    }
    const Rational value = fn(q);
    if (value == 0) throw DegenerateInputError("f_n vanishes at q after deflation");
    return make_result(f, p, n, Integer(static_cast<long>(valuation(value, p).value())), a);
}

DiophantineReport diophantine_bound_check(const Polynomial& f, std::uint64_t p, const Rational& q, unsigned n_max,
                                          std::optional<std::int64_t> candidate) {
    require_good_reduction(f, p);
    if (valuation(q, p) < Valuation(0)) throw PreconditionError("Diophantine bound needs v_p(q) >= 0");
    const auto series = periodic_sum_padic_series(f, p, q, n_max);
    DiophantineReport out;
    for (unsigned n = 1; n <= n_max; ++n) {
        const auto& r = series[n - 1];
        const std::int64_t v = r.fn_valuation.get_si();
        const std::int64_t vn = valuation(Integer(n), p).value();
        out.valuations.push_back(v);
        out.deflated.push_back(r.deflation > 0);
        out.c = std::max(out.c, v - vn);
    }
    const std::int64_t bound = candidate.value_or(out.c);
    for (unsigned n = 1; n <= n_max; ++n) {
        if (out.valuations[n - 1] > valuation(Integer(n), p).value() + bound) out.violations.push_back(n);
    }
    return out;
}

std::vector<SmallPeriodicRecord> small_periodic_valuations(const Polynomial& f, std::uint64_t p, const Rational& zeta,
                                                           unsigned period, unsigned k_max, std::size_t degree_cap) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    if (period == 0) throw PreconditionError("period must be positive");
    const OrbitClass oc = classify_orbit(f, zeta);
    if (oc.kind != OrbitKind::periodic || oc.preperiod != 0 || oc.period != period) {
        throw PreconditionError("zeta is not periodic of least period " + std::to_string(period));
    }
    const Polynomial df = f.derivative();
    Rational lambda(1);
    Rational x = zeta;
    for (unsigned j = 0; j < period; ++j) {
        lambda *= df(x);
        x = f(x);
    }
    const Valuation vl = valuation(lambda, p);
    if (vl.is_infinite() || vl.value() >= 0) {
        throw PreconditionError("multiplier at zeta is not p-adically larger than 1");
    }

    const Polynomial g = conjugate_linear(iterate(f, period, degree_cap), Rational(1), -zeta);
    std::vector<SmallPeriodicRecord> out;
    Polynomial gk = Polynomial::identity();
    for (unsigned k = 1; k <= k_max; ++k) {
        gk = compose(g, gk);
        if (static_cast<std::size_t>(gk.degree()) > degree_cap) throw ResourceError("degree cap exceeded");
        const Polynomial fk = gk - Polynomial::identity();
        // fk(0) = 0; drop the factor x.
        std::vector<Rational> shifted(fk.coeffs().begin() + 1, fk.coeffs().end());
        SmallPeriodicRecord rec;
        rec.k = k;
        rec.polygon = newton_polygon(Polynomial(std::move(shifted)), p);
        rec.min_slope = rec.polygon.min_slope();
        out.push_back(std::move(rec));
    }
    return out;
}

UnitProductResult unit_product_check(const Polynomial& f, std::uint64_t p, unsigned k, std::size_t degree_cap) {
    require_good_reduction(f, p);
    if (f.coeff(0) != 0) throw PreconditionError("unit product check needs f(0) = 0");
    if (k == 0) throw PreconditionError("k must be positive");
    const Integer pk = power(Integer(static_cast<unsigned long>(p)), k);
    if (!pk.fits_uint_p()) throw ResourceError("p^k too large");
    const unsigned n = static_cast<unsigned>(pk.get_ui());
    const Polynomial top = periodic_polynomial(f, n, degree_cap);
    const Polynomial bottom = periodic_polynomial(f, n / static_cast<unsigned>(p), degree_cap);
    const auto qr = divide(top, bottom);
    if (!qr.remainder.is_zero()) throw Error("f^{(m)}(x) - x does not divide f^{(n)}(x) - x");
    UnitProductResult out;
    out.constant = qr.quotient.coeff(0);
    out.valuation = valuation(out.constant, p);
    return out;
}

}  // namespace morphic
