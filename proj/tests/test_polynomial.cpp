#include <doctest.h>

#include <cmath>

#include "morphic/errors.hpp"
#include "morphic/fp_polynomial.hpp"
#include "morphic/polynomial.hpp"
#include "morphic/prime_power.hpp"
#include "support.hpp"

using namespace morphic;
using test::P;
using test::R;

TEST_CASE("rational parsing and formatting") {
    CHECK(R("6/4") == R("3/2"));
    CHECK(R("-7") == Rational(-7));
    CHECK(format_rational(R("3/2")) == "3/2");
    CHECK(format_rational(R("5")) == "5/1");
    CHECK(format_rational_short(R("5")) == "5");
    CHECK_THROWS_AS(parse_rational("1/0"), InputError);
    CHECK_THROWS_AS(parse_rational("abc"), InputError);
    CHECK_THROWS_AS(parse_rational(""), InputError);
}

TEST_CASE("valuations") {
    CHECK(valuation(R("675"), 5) == Valuation(2));
    CHECK(valuation(R("1/2"), 2) == Valuation(-1));
    CHECK(valuation(R("0"), 7).is_infinite());
    CHECK(valuation(R("12/25"), 5) == Valuation(-2));
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(91));
}

TEST_CASE("composition") {
    CHECK(compose(P({"0", "0", "1"}), P({"1", "1"})) == P({"1", "2", "1"}));
    const Polynomial f = P({"0", "1/2", "1"});
    CHECK(compose(f, f) == P({"0", "1/4", "3/4", "1", "1"}));
    CHECK(compose(Polynomial::identity(), f) == f);
}

TEST_CASE("iterates") {
    CHECK(iterate(P({"0", "0", "1"}), 3) == Polynomial::monomial(Rational(1), 8));
    const Polynomial f = P({"0", "-5", "1"});
    CHECK(iterate(f, 2) == P({"0", "25", "20", "-10", "1"}));
    CHECK(periodic_polynomial(f, 2) == P({"0", "24", "20", "-10", "1"}));
    CHECK(iterate(f, 0) == Polynomial::identity());
    CHECK_THROWS_AS(iterate(P({"0", "0", "1"}), 20, 1u << 10), ResourceError);
}

TEST_CASE("division") {
    const DivisionResult r = divide(P({"0", "24", "20", "-10", "1"}), P({"0", "-6", "1"}));
    CHECK(r.quotient == P({"-4", "-4", "1"}));
    CHECK(r.remainder.is_zero());
    const Polynomial f = P({"3", "0", "2"});
    CHECK(divide(f, P({"1"})).quotient == f);
    const DivisionResult s = divide(P({"1", "0", "1"}), P({"0", "1"}));
    CHECK(s.quotient == P({"0", "1"}));
    CHECK(s.remainder == P({"1"}));
    CHECK_THROWS_AS(divide(f, Polynomial()), PreconditionError);
}

TEST_CASE("root multiplicity") {
    CHECK(root_multiplicity(P({"0", "-6", "1"}), R("0")) == 1);
    CHECK(root_multiplicity(P({"0", "24", "20", "-10", "1"}), R("0")) == 1);
    CHECK(root_multiplicity(P({"0", "0", "1", "1"}), R("0")) == 2);
    CHECK(root_multiplicity(P({"1", "0", "1"}), R("0")) == 0);
}

TEST_CASE("linear conjugation") {
    const Polynomial t2 = P({"-1", "0", "2"});
    CHECK(conjugate_linear(t2, R("2"), R("0")) == P({"-2", "0", "1"}));
    CHECK(conjugate_linear(t2, R("1"), R("0")) == t2);
    // sigma(x) = x - 1/2 carries the fixed point 1/2 of x^2 + x/2 to 0.
    const Polynomial g = conjugate_linear(P({"0", "1/2", "1"}), R("1"), R("-1/2"));
    CHECK(g(R("0")) == R("0"));
    CHECK(g(R("-1/2")) == R("-1/2"));
    CHECK(taylor_shift(P({"0", "0", "1"}), R("1")) == P({"1", "2", "1"}));
}

TEST_CASE("reduction modulo p") {
    CHECK(reduce_mod_p(P({"1", "0", "1"}), 3) == FpPolynomial(3, {1, 0, 1}));
    CHECK(reduce_mod_p(P({"0", "-5", "1"}), 2) == FpPolynomial(2, {0, 1, 1}));
    CHECK_THROWS_AS(reduce_mod_p(P({"0", "1/2", "1"}), 2), BadReductionError);
    CHECK(good_reduction(P({"1", "0", "1"}), 3));
    CHECK_FALSE(good_reduction(P({"0", "1/2", "1"}), 2));
    CHECK_FALSE(good_reduction(P({"1", "0", "2"}), 2));
}

TEST_CASE("leading coefficient of iterates") {
    const LeadingCoefficientPower b = leading_coefficient_power(P({"0", "0", "3"}), 3);
    CHECK(b.exponent == 7);
    CHECK(b.log_magnitude() == doctest::Approx(7 * std::log(3.0)).epsilon(1e-14));
    CHECK(b.valuation(3) == 7);
    CHECK(leading_coefficient_power(P({"1", "0", "1"}), 5).log_magnitude() == 0.0);
    CHECK(iterate(P({"0", "0", "3"}), 3).leading() == Rational(2187));
}

TEST_CASE("orbits modulo prime powers") {
    const Polynomial f = P({"1", "0", "1"});
    const PrimePowerOrbit o = orbit_mod_prime_power(f, R("2"), 5, 3, 4);
    CHECK(o.residues[3].residue == 677 % 625);
    CHECK(o.return_valuations[1].value == 0);
    CHECK_FALSE(o.return_valuations[1].at_least);
    CHECK(o.return_valuations[3].value == 2);
    CHECK_FALSE(o.return_valuations[3].at_least);
    const PrimePowerOrbit low = orbit_mod_prime_power(f, R("2"), 5, 3, 1);
    CHECK(low.return_valuations[3].at_least);
    CHECK(low.return_valuations[3].value == 1);
    CHECK_THROWS_AS(orbit_mod_prime_power(P({"0", "1/2", "1"}), R("1"), 2, 3, 4), BadReductionError);

    const auto exact = return_valuations(f, R("2"), 5, 12);
    for (unsigned n = 1; n <= 12; ++n) CHECK(*exact[n] == (n % 3 == 0 ? 2 : 0));
}

TEST_CASE("orbit classification") {
    CHECK(classify_orbit(P({"-1", "0", "1"}), R("0")).kind == OrbitKind::periodic);
    CHECK(classify_orbit(P({"-1", "0", "1"}), R("0")).period == 2);
    const OrbitClass pre = classify_orbit(P({"-2", "0", "1"}), R("0"));
    CHECK(pre.kind == OrbitKind::preperiodic);
    CHECK(pre.preperiod == 2);
    CHECK(pre.period == 1);
    CHECK(classify_orbit(P({"0", "0", "1"}), R("3")).kind == OrbitKind::wandering);
}

TEST_CASE("coefficient JSON") {
    const Polynomial f = P({"1", "-1/2", "3"});
    CHECK(parse_polynomial_json(format_polynomial_json(f)) == f);
    CHECK(parse_polynomial_json(R"(["1", 0, "1"])") == P({"1", "0", "1"}));
    CHECK_THROWS_AS(parse_polynomial_json("[1, "), InputError);
    CHECK_THROWS_AS(parse_polynomial_json(R"({"a": 1})"), InputError);
}

TEST_CASE("escape radii") {
    CHECK(cauchy_radius(P({"-2", "0", "1"})) == doctest::Approx(3.0));
    const Polynomial f = P({"-2", "0", "1"});
    CHECK(escape_radius(f) >= 2.0);
    CHECK(escape_radius_exact(f) >= R("2"));
}
