#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "morphic/polynomial.hpp"
#include "morphic/rational.hpp"

namespace test {

inline morphic::Rational R(const char* text) { return morphic::parse_rational(text); }

// Coefficients in ascending degree, e.g. P({"1", "0", "1"}) is x^2 + 1.
inline morphic::Polynomial P(std::initializer_list<const char*> coeffs) {
    std::vector<morphic::Rational> c;
    for (const char* s : coeffs) c.push_back(morphic::parse_rational(s));
    return morphic::Polynomial(std::move(c));
}

}  // namespace test
