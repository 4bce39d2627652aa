#include <doctest.h>

#include "morphic/dynatomic.hpp"
#include "morphic/errors.hpp"
#include "morphic/fp_polynomial.hpp"
#include "support.hpp"

using namespace morphic;
using test::P;
using test::R;

TEST_CASE("Moebius function and divisors") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(6) == 1);
    CHECK(moebius(12) == 0);
    CHECK(moebius(30) == -1);
    CHECK(divisors(12) == std::vector<unsigned>{1, 2, 3, 4, 6, 12});
    CHECK(moebius_transform({2, 2, 5, 2, 2, 5, 2, 2, 14}) == std::vector<long>{2, 0, 3, 0, 0, 0, 0, 0, 9});
}

TEST_CASE("multiplicities over Q") {
    const Polynomial f = P({"0", "-5", "1"});
    CHECK(multiplicity_a_n(f, R("0"), 1) == 1);
    CHECK(multiplicity_a_n(f, R("0"), 2) == 1);
    CHECK(moebius_star(f, R("0"), 2) == 0);
    const Polynomial g = P({"0", "1", "1", "1"});
    for (unsigned n = 1; n <= 4; ++n) CHECK(multiplicity_a_n(g, R("0"), n) == 2);
    CHECK(moebius_star(g, R("0"), 1) == 2);
    // Multiplier -1: the second iterate is tangent to the diagonal to higher order.
    const Polynomial h = P({"-3/4", "0", "1"});
    const unsigned expected[] = {1, 3, 1, 3};
    for (unsigned n = 1; n <= 4; ++n) CHECK(multiplicity_a_n(h, R("-1/2"), n) == expected[n - 1]);
    CHECK(moebius_star(h, R("-1/2"), 2) == 2);
    const Polynomial cycle3 = P({"-29/16", "0", "1"});
    CHECK(multiplicity_a_n(P({"0", "0", "1"}), R("3"), 2) == 0);
    CHECK(multiplicity_a_n(cycle3, R("-1/4"), 1) == 0);
    CHECK(moebius_star(cycle3, R("-1/4"), 2) == 0);
    CHECK(multiplicity_a_n(cycle3, R("-1/4"), 3) == 1);
    CHECK(least_period(cycle3, R("-1/4")) == 3u);
}

TEST_CASE("multiplicities over F_p") {
    const FpPolynomial f = reduce_mod_p(P({"1", "0", "1"}), 3);
    const unsigned expected[] = {2, 2, 5, 2, 2, 5, 2, 2, 14};
    for (unsigned n = 1; n <= 9; ++n) CHECK(multiplicity_a_n(f, 2, n) == expected[n - 1]);
    CHECK(moebius_star(f, 2, 3) == 3);
    CHECK(moebius_star(f, 2, 9) == 9);
    const FpPolynomial sq = reduce_mod_p(P({"0", "0", "1"}), 5);
    const unsigned at_one[] = {1, 1, 1, 5, 1};
    for (unsigned n = 1; n <= 5; ++n) CHECK(multiplicity_a_n(sq, 1, n) == at_one[n - 1]);
    for (unsigned n = 1; n <= 5; ++n) CHECK(multiplicity_a_n(sq, 0, n) == 1);
}

TEST_CASE("multipliers and their orders") {
    const FpPolynomial f = reduce_mod_p(P({"1", "0", "1"}), 3);
    CHECK(least_period(f, 2) == 1u);
    CHECK(multiplier(f, 2, 1) == 1);
    CHECK(multiplier(P({"0", "0", "1"}), R("1"), 1) == 2);
    CHECK(least_period(P({"-1", "0", "1"}), R("0")) == 2u);
    CHECK(multiplier(P({"-1", "0", "1"}), R("0"), 2) == 0);
    CHECK(multiplier_order(1, PrimeField(3)) == 1u);
    CHECK(multiplier_order(2, PrimeField(5)) == 4u);
    CHECK_FALSE(multiplier_order(R("2")).has_value());
    CHECK(multiplier_order(R("-1")) == 2u);
    CHECK_FALSE(multiplier_order(R("0")).has_value());
    CHECK_FALSE(least_period(P({"0", "0", "1"}), R("3")).has_value());
}

TEST_CASE("predicted essential periods") {
    const EssentialPeriods a = essential_periods_predicted(1, 1, 3);
    CHECK(a.up_to(30) == std::vector<unsigned>{1, 3, 9, 27});
    CHECK(essential_periods_predicted(1, std::nullopt, 0).up_to(10) == std::vector<unsigned>{1});
    CHECK(essential_periods_predicted(2, 3, 0).up_to(20) == std::vector<unsigned>{2, 6});
    CHECK(essential_periods_predicted(1, 4, 5).up_to(25) == std::vector<unsigned>{1, 4, 20});
}

TEST_CASE("observed essential periods") {
    CHECK(essential_periods_observed(reduce_mod_p(P({"1", "0", "1"}), 3), 2, 10) == std::vector<unsigned>{1, 3, 9});
    CHECK(essential_periods_observed(reduce_mod_p(P({"0", "0", "1"}), 5), 1, 5) == std::vector<unsigned>{1, 4});
    CHECK(essential_periods_observed(reduce_mod_p(P({"0", "0", "1"}), 5), 0, 5) == std::vector<unsigned>{1});
}

TEST_CASE("records") {
    const auto recs = dynatomic_records(reduce_mod_p(P({"1", "0", "1"}), 3), 2, 9);
    REQUIRE(recs.size() == 9);
    CHECK(recs[2].a_n == 5);
    CHECK(recs[2].a_star_n == 3);
    CHECK(recs[2].predicted_essential);
    CHECK_FALSE(recs[1].predicted_essential);
    CHECK(recs[0].multiplier_order == 1u);
    const auto q = dynatomic_records(P({"0", "-1", "1"}), R("2"), 3);
    CHECK(q[0].field == "Q");
    CHECK(q[0].a_n == 1);
    CHECK(q[0].multiplier == "3/1");
}

TEST_CASE("reduction bounds multiplicities") {
    CHECK(reduction_multiplicity_check(P({"0", "0", "1"}), 5, {R("0"), R("1")}, 1));
    CHECK(reduction_multiplicity_check(P({"0", "-6", "1"}), 2, {R("0"), R("6")}, 1));
    CHECK(multiplicity_a_n(reduce_mod_p(P({"0", "-5", "1"}), 2), 0, 1) >= 2);
    CHECK(reduction_multiplicity_check(P({"0", "0", "1"}), 5, {}, 1));
}
