#include <doctest.h>

#include <cmath>
#include <complex>

#include "morphic/archimedean.hpp"
#include "morphic/errors.hpp"
#include "morphic/gallery.hpp"
#include "support.hpp"

using namespace morphic;
using test::P;
using test::R;

namespace {

const Polynomial kSquare = P({"0", "0", "1"});
const Polynomial kT2 = P({"-1", "0", "2"});
const double kLog2PlusRoot3 = 1.3169578969248167086;

}  // namespace

TEST_CASE("iterate limit") {
    CHECK(height_iterate(kSquare, 3.0).value == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    CHECK(height_iterate(kT2, 2.0).value == doctest::Approx(kLog2PlusRoot3).epsilon(1e-13));
    const HeightEstimate bounded = height_iterate(P({"-1", "0", "1"}), 0.0);
    CHECK(bounded.value == 0.0);
    CHECK(bounded.verdict == OrbitVerdict::bounded);
    CHECK(height_iterate(kSquare, {1.0, 1.0}).value == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));
    CHECK_THROWS_AS(height_iterate(P({"1", "1"}), 3.0), PreconditionError);
}

TEST_CASE("periodic-point sums against independent high-precision values") {
    // Reference sums from 60-digit polynomial roots of f^(n)(x) - x.
    struct Case {
        Polynomial f;
        ComplexRational q;
        unsigned n;
        double expected;
    };
    const Case cases[] = {
        {kSquare, R("3"), 1, 0.89587973461402750041},
        {kSquare, R("3"), 2, 1.0891772066723979342},
        {kSquare, R("3"), 3, 1.0985551196755741952},
        {kSquare, R("3"), 4, 1.0986122843123770786},
        {kSquare, ComplexRational(R("1"), R("1")), 4, 0.34632945215309690932},
        {kT2, R("2"), 2, 1.1384692229001352087},
        {kT2, R("2"), 4, 1.2736361979633060894},
        {kT2, R("2"), 6, 1.3061274722285675632},
        {kT2, R("2"), 8, 1.3142502907507544223},
        {P({"-2", "0", "1"}), R("3"), 4, 0.96242361162486599082},
        {P({"-1", "0", "1"}), R("2"), 5, 0.51787608582103502483},
    };
    for (const auto& c : cases) {
        const HeightEstimate h = height_periodic_sum(c.f, c.q, c.n);
        CHECK(h.value == doctest::Approx(c.expected).epsilon(1e-13));
        CHECK(h.method == HeightMethod::periodic_sum);
    }
    CHECK(height_periodic_sum(kSquare, R("3"), 2).value == doctest::Approx(std::log(78.0) / 4).epsilon(1e-14));
    CHECK(std::fabs(height_periodic_sum(kT2, R("2"), 8).value - kLog2PlusRoot3) <= 5e-2);
}

TEST_CASE("periodic q is excluded from its own sum") {
    const HeightEstimate h = height_periodic_sum(kSquare, R("1"), 2);
    CHECK(h.excluded == 1);
    // |1 - 0| |1 - w| |1 - conj(w)| = 3 for the primitive cube roots w.
    CHECK(h.value == doctest::Approx(std::log(3.0) / 4).epsilon(1e-14));
}

TEST_CASE("decomposition identity") {
    const IdentitySides a = periodic_sum_identity(kSquare, R("3"), 2);
    CHECK(a.lhs == doctest::Approx(std::log(78.0) / 4).epsilon(1e-14));
    CHECK(std::fabs(a.lhs - a.rhs) <= 1e-12);
    const IdentitySides b = periodic_sum_identity(kT2, R("5"), 3);
    CHECK(b.lhs == doctest::Approx(2.2057882584334650917).epsilon(1e-14));
    CHECK(std::fabs(b.lhs - b.rhs) <= 1e-8);
    CHECK_THROWS_AS(periodic_sum_identity(kSquare, R("1"), 3), PreconditionError);
}

TEST_CASE("maximal-measure samples") {
    const MeasureSample circle = sample_maximal_measure(kSquare, 30, 500, 7);
    REQUIRE(circle.points.size() == 500);
    for (auto z : circle.points) CHECK(std::abs(std::abs(z) - 1.0) < 1e-9);
    const MeasureSample interval = sample_maximal_measure(kT2, 30, 500, 7);
    for (auto z : interval.points) {
        CHECK(std::fabs(z.imag()) <= 1e-8);
        CHECK(std::fabs(z.real()) <= 1.0 + 1e-8);
    }
    const MeasureSample again = sample_maximal_measure(kT2, 30, 500, 7);
    CHECK(again.points == interval.points);
    CHECK_FALSE(sample_maximal_measure(kT2, 30, 500, 8).points == interval.points);
}

TEST_CASE("backward-iteration integral") {
    const MeasureSample circle = sample_maximal_measure(kSquare, 40, 10000, 1);
    CHECK(std::fabs(height_backward_integral(kSquare, 3.0, circle).value - std::log(3.0)) <= 5e-2);
    CHECK(std::fabs(height_backward_integral(kSquare, 0.0, circle).value) <= 5e-2);
    const MeasureSample interval = sample_maximal_measure(kT2, 40, 10000, 1);
    CHECK(std::fabs(height_backward_integral(kT2, 2.0, interval).value - kLog2PlusRoot3) <= 5e-2);
}

TEST_CASE("pullback invariance") {
    const MeasureSample circle = sample_maximal_measure(kSquare, 40, 10000, 1);
    const PullbackSides power = pullback_invariance_check(kSquare, 3.0, circle);
    CHECK(std::fabs(power.lhs - power.rhs) <= 5e-2);
    const Polynomial g = P({"-2", "0", "1"});
    const MeasureSample s = sample_maximal_measure(g, 40, 10000, 1);
    const PullbackSides sides = pullback_invariance_check(g, 3.0, s);
    CHECK(std::fabs(sides.lhs - sides.rhs) <= 5e-2);
    const PullbackSides on_set = pullback_invariance_check(g, s.points.front(), s);
    CHECK(std::isfinite(on_set.lhs));
    CHECK(std::isfinite(on_set.rhs));
    CHECK_THROWS_AS(pullback_invariance_check(kT2, 3.0, s), PreconditionError);
}

TEST_CASE("closed forms") {
    CHECK(chebyshev_closed_form(2, 2.0).value == doctest::Approx(kLog2PlusRoot3).epsilon(1e-15));
    CHECK(chebyshev_closed_form(2, -2.0).value == doctest::Approx(kLog2PlusRoot3).epsilon(1e-15));
    CHECK(chebyshev_closed_form(2, 0.5).value == 0.0);
    CHECK(power_map_height(2, 3.0).value == doctest::Approx(std::log(3.0)));
    CHECK(power_map_height(3, {0.5, 0.5}).value == 0.0);
    CHECK(power_map_height(2, {1.0, 1.0}).value == doctest::Approx(0.5 * std::log(2.0)));
}

TEST_CASE("gallery maps") {
    CHECK(build_gallery(GalleryKind::chebyshev, 2) == kT2);
    CHECK(build_gallery(GalleryKind::chebyshev_monic, 2) == P({"-2", "0", "1"}));
    CHECK(build_gallery(GalleryKind::power, 3) == P({"0", "0", "0", "1"}));
    CHECK(chebyshev_polynomial(3) == P({"0", "-3", "0", "4"}));
    CHECK(build_gallery(GalleryKind::chebyshev_monic, 5).is_monic());
    CHECK_THROWS_AS(parse_gallery_kind("sine"), InputError);
}
