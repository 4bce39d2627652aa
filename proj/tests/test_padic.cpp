#include <doctest.h>

#include <cmath>

#include "morphic/errors.hpp"
#include "morphic/newton_polygon.hpp"
#include "morphic/padic.hpp"
#include "morphic/prime_power.hpp"
#include "support.hpp"

using namespace morphic;
using test::P;
using test::R;

TEST_CASE("local height") {
    const Polynomial f = P({"1", "0", "1"});
    CHECK(local_height_padic(f, 3, R("1/3")).value == doctest::Approx(std::log(3.0)));
    CHECK(local_height_padic(f, 3, R("1/3")).value_in_valuation_units == 1);
    CHECK(local_height_padic(f, 3, R("2")).value == 0.0);
    CHECK_THROWS_AS(local_height_padic(P({"0", "1/2", "1"}), 2, R("1")), BadReductionError);
    for (unsigned n = 1; n <= 6; ++n) {
        CHECK(padic_iterate_height(P({"0", "0", "1"}), 7, R("1/7"), n).value_in_valuation_units == 1);
    }
}

TEST_CASE("periodic sums against exact references") {
    // Values in valuation units from independent exact evaluation of f^(n)(q) - q.
    const Polynomial f = P({"1", "0", "1"});
    const char* expected[] = {"0", "0", "-1/4", "0", "0", "-1/32", "0", "0"};
    for (unsigned n = 1; n <= 8; ++n) {
        const PadicHeightResult r = periodic_sum_padic(f, 5, R("2"), n);
        CHECK(r.value_in_valuation_units == R(expected[n - 1]));
    }
    CHECK(periodic_sum_padic(f, 5, R("2"), 3).value == doctest::Approx(-0.25 * std::log(5.0)));
    CHECK(periodic_sum_padic(f, 5, R("2"), 3).fn_valuation == 2);
    for (unsigned n = 1; n <= 4; ++n) {
        CHECK(periodic_sum_padic(f, 3, R("1/3"), n).value_in_valuation_units == 1);
        CHECK(periodic_sum_padic(P({"0", "0", "1"}), 7, R("1/7"), n).value_in_valuation_units == 1);
        CHECK(periodic_sum_padic(P({"-2", "0", "1"}), 5, R("1"), n).value_in_valuation_units == 0);
    }
    for (unsigned n = 1; n <= 3; ++n) {
        CHECK(periodic_sum_padic(P({"1", "1", "0", "1"}), 2, R("0"), n).value_in_valuation_units == 0);
    }
}

TEST_CASE("periodic q is deflated") {
    const Polynomial f = P({"0", "-1", "1"});
    for (unsigned n = 1; n <= 4; ++n) {
        const PadicHeightResult r = periodic_sum_padic(f, 3, R("0"), n);
        CHECK(r.deflation == (n % 2 == 0 ? 3u : 1u));
        CHECK(r.value_in_valuation_units == 0);
        CHECK(periodic_sum_padic_by_division(f, 3, R("0"), n).value_in_valuation_units == 0);
    }
    const LocalExpansion e = periodic_local_expansion(P({"0", "1", "1", "1"}), R("0"), 1);
    CHECK(e.order == 2);
    CHECK(e.leading == 1);
}

TEST_CASE("series and division agree") {
    const Polynomial f = P({"-2", "0", "1"});
    const auto series = periodic_sum_padic_series(f, 5, R("2"), 6);
    REQUIRE(series.size() == 6);
    for (unsigned n = 1; n <= 6; ++n) {
        CHECK(series[n - 1].value_in_valuation_units ==
              periodic_sum_padic_by_division(f, 5, R("2"), n).value_in_valuation_units);
    }
}

TEST_CASE("Diophantine bound") {
    const DiophantineReport r = diophantine_bound_check(P({"1", "0", "1"}), 5, R("2"), 200);
    CHECK(r.c == 2);
    CHECK(r.violations.empty());
    REQUIRE(r.valuations.size() == 200);
    for (unsigned n = 1; n <= 200; ++n) CHECK(r.valuations[n - 1] == (n % 3 == 0 ? 2 : 0));
    const DiophantineReport square = diophantine_bound_check(P({"0", "0", "1"}), 5, R("2"), 50);
    CHECK(square.c == 0);
    const DiophantineReport strict = diophantine_bound_check(P({"1", "0", "1"}), 5, R("2"), 30, 1);
    CHECK(strict.violations.size() == 8);
    CHECK(strict.violations.front() == 3);
}

TEST_CASE("Newton polygons") {
    const NewtonPolygon a = newton_polygon(P({"0", "-1/2", "1"}), 2);
    REQUIRE(a.segments.size() == 1);
    CHECK(a.segments[0].slope == 1);
    CHECK(a.segments[0].length == 1);
    CHECK(a.vertices == std::vector<NewtonPoint>{{1, -1}, {2, 0}});

    const NewtonPolygon b = newton_polygon(P({"3/2", "3/2", "1"}), 2);
    REQUIRE(b.segments.size() == 2);
    CHECK(b.segments[0] == NewtonSegment{R("0"), 1});
    CHECK(b.segments[1] == NewtonSegment{R("1"), 1});

    const NewtonPolygon c = newton_polygon(P({"1", "3", "9", "1"}), 3);
    REQUIRE(c.segments.size() == 1);
    CHECK(c.segments[0].slope == 0);
    CHECK(c.segments[0].length == 3);
    CHECK(c.weighted_slope_sum() == 0);
}

TEST_CASE("small periodic points near a repelling fixed point") {
    const auto recs = small_periodic_valuations(P({"0", "1/2", "1"}), 2, R("0"), 1, 6);
    REQUIRE(recs.size() == 6);
    for (unsigned k = 1; k <= 6; ++k) CHECK(recs[k - 1].min_slope == Rational(2) - k);
    CHECK(recs[1].polygon.points == std::vector<NewtonPoint>{{0, -2}, {1, -2}, {2, 0}, {3, 0}});
    CHECK(recs[2].polygon.vertices == std::vector<NewtonPoint>{{0, -3}, {1, -4}, {3, -4}, {7, 0}});
    CHECK(recs[5].polygon.vertices ==
          std::vector<NewtonPoint>{{0, -6}, {1, -10}, {3, -16}, {7, -24}, {15, -32}, {31, -32}, {63, 0}});
    CHECK_THROWS_AS(small_periodic_valuations(P({"0", "1", "1"}), 2, R("0"), 1, 3), PreconditionError);
}

TEST_CASE("unit-product quotient") {
    const UnitProductResult a = unit_product_check(P({"0", "1", "1", "1"}), 2, 1);
    CHECK(a.constant == 2);
    CHECK(a.valuation == Valuation(1));
    CHECK(unit_product_check(P({"0", "1", "1", "1"}), 2, 2).valuation == Valuation(1));
    const UnitProductResult b = unit_product_check(P({"0", "3", "0", "1"}), 3, 1);
    CHECK(b.constant == 13);
    CHECK(b.valuation == Valuation(0));
    CHECK(unit_product_check(P({"0", "1", "1"}), 3, 1).constant == 3);
    CHECK_THROWS_AS(unit_product_check(P({"1", "1", "1"}), 2, 1), PreconditionError);
}

TEST_CASE("return valuations stop at the truncation ceiling") {
    TruncationPolicy tight;
    tight.initial = 4;
    tight.ceiling = 8;
    CHECK_THROWS_AS(return_valuations(P({"0", "-1", "1"}), R("0"), 3, 2, 0, tight), ResourceError);
    CHECK_FALSE(return_valuations(P({"0", "-1", "1"}), R("0"), 3, 2, 1, tight)[1].has_value());
}
