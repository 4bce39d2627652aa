#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "morphic/polynomial.hpp"

namespace morphic {

struct NewtonPoint {
    unsigned index = 0;
    std::int64_t valuation = 0;
    friend bool operator==(const NewtonPoint&, const NewtonPoint&) = default;
};

/// A segment of slope s and length l accounts for l roots with |xi|_p = p^s.
struct NewtonSegment {
    Rational slope;
    unsigned length = 0;
    friend bool operator==(const NewtonSegment&, const NewtonSegment&) = default;
};

struct NewtonPolygon {
    std::vector<NewtonSegment> segments;  // slopes strictly increasing
    std::vector<NewtonPoint> points;      // (i, v_p(a_i)) for every nonzero a_i
    std::vector<NewtonPoint> vertices;    // lower hull corners, left to right

    Rational min_slope() const;
    /// Sum of slope * length over all segments.
    Rational weighted_slope_sum() const;
};

NewtonPolygon newton_polygon(const Polynomial& f, std::uint64_t p);

std::string to_string(const NewtonPolygon& np);

}  // namespace morphic
