#include "morphic/newton_polygon.hpp"

#include <sstream>

#include "morphic/errors.hpp"

namespace morphic {

namespace {

// Cross product sign of (b - a) x (c - a); nonpositive means b is not strictly below segment ac.
Integer cross(const NewtonPoint& a, const NewtonPoint& b, const NewtonPoint& c) {
    const Integer bx = Integer(static_cast<long>(b.index)) - static_cast<long>(a.index);
    const Integer by = Integer(static_cast<long>(b.valuation)) - static_cast<long>(a.valuation);
    const Integer cx = Integer(static_cast<long>(c.index)) - static_cast<long>(a.index);
    const Integer cy = Integer(static_cast<long>(c.valuation)) - static_cast<long>(a.valuation);
    return bx * cy - by * cx;
}

}  // namespace

Rational NewtonPolygon::min_slope() const {
    if (segments.empty()) throw PreconditionError("Newton polygon has no segments");
    return segments.front().slope;
}

Rational NewtonPolygon::weighted_slope_sum() const {
    Rational s(0);
    for (const auto& seg : segments) s += seg.slope * static_cast<unsigned long>(seg.length);
    return s;
}

NewtonPolygon newton_polygon(const Polynomial& f, std::uint64_t p) {
    if (f.is_zero()) throw PreconditionError("Newton polygon of the zero polynomial");
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    NewtonPolygon np;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        const auto& c = f.coeffs()[i];
        if (c == 0) continue;
        np.points.push_back({static_cast<unsigned>(i), valuation(c, p).value()});
    }
    // Monotone chain, lower hull only; collinear interior points are dropped.
    for (const auto& pt : np.points) {
        while (np.vertices.size() >= 2 && cross(np.vertices[np.vertices.size() - 2], np.vertices.back(), pt) <= 0) {
            np.vertices.pop_back();
        }
        np.vertices.push_back(pt);
    }
    for (std::size_t k = 1; k < np.vertices.size(); ++k) {
        const auto& a = np.vertices[k - 1];
        const auto& b = np.vertices[k];
        const unsigned len = b.index - a.index;
        np.segments.push_back({make_rational(Integer(static_cast<long>(b.valuation - a.valuation)),
                                             Integer(static_cast<unsigned long>(len))),
                               len});
    }
    return np;
}

std::string to_string(const NewtonPolygon& np) {
    std::ostringstream out;
    for (std::size_t k = 0; k < np.segments.size(); ++k) {
        if (k) out << ", ";
        out << "slope " << format_rational_short(np.segments[k].slope) << " x" << np.segments[k].length;
    }
    return out.str();
}

}  // namespace morphic
