#include "morphic/complex_rational.hpp"

#include <cmath>

#include "morphic/errors.hpp"

namespace morphic {

Rational exact_rational(double v) {
    if (!std::isfinite(v)) throw InputError("non-finite coordinate");
    Rational out;
    mpq_set_d(out.get_mpq_t(), v);
    return out;
}

ComplexRational ComplexRational::from_complex(std::complex<double> z) {
    return {exact_rational(z.real()), exact_rational(z.imag())};
}

std::string ComplexRational::to_string() const {
    if (im == 0) return format_rational_short(re);
    return format_rational_short(re) + (im < 0 ? "-" : "+") + format_rational_short(abs(im)) + "i";
}

ComplexRational evaluate(const Polynomial& f, const ComplexRational& z) {
    ComplexRational acc;
    const auto& a = f.coeffs();
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        acc = acc * z;
        acc.re += *it;
    }
    return acc;
}

double log_abs(const ComplexRational& z) { return 0.5 * log_abs(z.norm()); }

}  // namespace morphic
