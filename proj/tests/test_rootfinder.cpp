#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "morphic/errors.hpp"
#include "morphic/rootfinder.hpp"
#include "support.hpp"

using namespace morphic;
using test::P;
using test::R;

namespace {

bool contains(const RootSet& rs, std::complex<double> z, double tol) {
    return std::any_of(rs.roots.begin(), rs.roots.end(),
                       [&](const ComplexApprox& r) { return std::abs(r.to_complex() - z) <= tol; });
}

}  // namespace

TEST_CASE("periodic points of z^2 with period dividing 2") {
    const RootSet rs = find_roots(P({"0", "-1", "0", "0", "1"}));
    REQUIRE(rs.roots.size() == 4);
    const double h = std::sqrt(3.0) / 2;
    for (auto z : {std::complex<double>(0, 0), {1, 0}, {-0.5, h}, {-0.5, -h}}) CHECK(contains(rs, z, 1e-30));
    for (const auto& r : rs.roots) {
        CHECK(r.precision_bits >= 128);
        CHECK(r.residual_bound <= std::ldexp(1.0, -64) * 2);
    }
}

TEST_CASE("square roots of 2") {
    const RootSet rs = find_roots(P({"-2", "0", "1"}), 256);
    REQUIRE(rs.roots.size() == 2);
    const BigFloat two(2.0, 512);
    for (const auto& r : rs.roots) {
        CHECK(std::fabs(std::fabs(r.to_complex().real()) - std::sqrt(2.0)) < 1e-15);
        const BigFloat err = abs(r.real * r.real - two);
        CHECK(err < BigFloat(std::ldexp(1.0, -120), 512));
    }
}

TEST_CASE("Chebyshev periodic points lie in [-1, 1]") {
    const RootSet rs = find_periodic_points(P({"-1", "0", "2"}), 2);
    REQUIRE(rs.roots.size() == 4);
    for (double t : {-0.80901699437494742, -0.5, 0.30901699437494742, 1.0}) CHECK(contains(rs, {t, 0.0}, 1e-14));
    for (const auto& r : rs.roots) CHECK(std::fabs(r.to_complex().imag()) < 1e-20);
}

TEST_CASE("period counts and caps") {
    CHECK(find_periodic_points(P({"-1", "0", "1"}), 5).roots.size() == 32);
    CHECK(find_periodic_points(P({"0", "0", "0", "1"}), 3).roots.size() == 27);
    CHECK_THROWS_AS(find_periodic_points(P({"0", "0", "1"}), 20), ResourceError);
    CHECK_THROWS_AS(find_roots(P({"5"})), PreconditionError);
}

TEST_CASE("multiple roots escalate precision until accurate") {
    // (x + 1)^2 (x - 2)
    const RootSet rs = find_roots(P({"-2", "-3", "0", "1"}));
    REQUIRE(rs.roots.size() == 3);
    CHECK(contains(rs, {2.0, 0.0}, 1e-30));
    unsigned near = 0;
    for (const auto& r : rs.roots) near += std::abs(r.to_complex() + 1.0) < 1e-25;
    CHECK(near == 2);
}

TEST_CASE("clustering") {
    const RootSet rs = find_roots(P({"1", "-2", "1"}));
    const auto clusters = cluster_roots(rs, 1e-6);
    REQUIRE(clusters.size() == 1);
    CHECK(clusters[0].multiplicity == 2);
    CHECK(cluster_roots(find_roots(P({"0", "-1", "0", "0", "1"})), 1e-6).size() == 4);
    CHECK(cluster_roots(RootSet{}, 1e-6).empty());
}

TEST_CASE("excluding a point") {
    const RootSet rs = find_roots(P({"0", "-1", "0", "0", "1"}));
    const RootSet without_one = exclude_point(rs, std::complex<double>(1.0, 0.0), 1e-10);
    CHECK(without_one.roots.size() == 3);
    CHECK_FALSE(contains(without_one, {1.0, 0.0}, 1e-10));
    CHECK(exclude_point(rs, std::complex<double>(5.0, 5.0), 1e-10).roots.size() == 4);
    const RootSet pair = find_roots(P({"0", "-1", "1"}));
    const RootSet rest = exclude_point(pair, std::complex<double>(0.0, 0.0), 1e-10);
    REQUIRE(rest.roots.size() == 1);
    CHECK(std::abs(rest.roots[0].to_complex() - 1.0) < 1e-30);
}

TEST_CASE("results are deterministic") {
    const RootSet a = find_periodic_points(P({"1/4", "-1", "1"}), 3);
    const RootSet b = find_periodic_points(P({"1/4", "-1", "1"}), 3);
    REQUIRE(a.roots.size() == b.roots.size());
    for (std::size_t i = 0; i < a.roots.size(); ++i) {
        CHECK(a.roots[i].real == b.roots[i].real);
        CHECK(a.roots[i].imag == b.roots[i].imag);
    }
}

TEST_CASE("preimages") {
    const auto w = solve_preimages(P({"0", "0", "1"}), {0.0, 4.0});
    REQUIRE(w.size() == 2);
    for (auto z : w) CHECK(std::abs(z * z - std::complex<double>(0.0, 4.0)) < 1e-14);
    const auto c = solve_preimages(P({"0", "-1", "0", "1"}), {0.5, 0.0});
    REQUIRE(c.size() == 3);
    for (auto z : c) CHECK(std::abs(z * z * z - z - 0.5) < 1e-13);
}
