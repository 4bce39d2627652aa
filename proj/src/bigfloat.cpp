#include "morphic/bigfloat.hpp"

#include <algorithm>
#include <vector>

namespace morphic {

namespace {

void widen_exponent_range() {
    thread_local const bool done = [] {
        mpfr_set_emax(mpfr_get_emax_max());
        mpfr_set_emin(mpfr_get_emin_min());
        return true;
    }();
    (void)done;
}

mpfr_prec_t joint(const BigFloat& a, const BigFloat& b) { return std::max(a.precision(), b.precision()); }

}  // namespace

BigFloat::BigFloat(mpfr_prec_t precision) {
    widen_exponent_range();
    mpfr_init2(value_, precision);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double v, mpfr_prec_t precision) : BigFloat(precision) { mpfr_set_d(value_, v, MPFR_RNDN); }

BigFloat::BigFloat(const Rational& q, mpfr_prec_t precision) : BigFloat(precision) {
    mpfr_set_q(value_, q.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) : BigFloat(other.precision()) { mpfr_set(value_, other.value_, MPFR_RNDN); }

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, MPFR_PREC_MIN);
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, other.precision());
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

void BigFloat::set_precision(mpfr_prec_t precision) { mpfr_prec_round(value_, precision, MPFR_RNDN); }

std::string BigFloat::to_string(int digits) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    return buf.data();
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
    if (rhs.precision() > precision()) set_precision(rhs.precision());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
    if (rhs.precision() > precision()) set_precision(rhs.precision());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
    if (rhs.precision() > precision()) set_precision(rhs.precision());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
    if (rhs.precision() > precision()) set_precision(rhs.precision());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_add(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_sub(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_mul(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    BigFloat out(joint(a, b));
    mpfr_div(out.value_, a.value_, b.value_, MPFR_RNDN);
    return out;
}

BigFloat operator-(const BigFloat& a) {
    BigFloat out(a.precision());
    mpfr_neg(out.value_, a.value_, MPFR_RNDN);
    return out;
}

BigFloat abs(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_abs(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

BigFloat sqrt(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_sqrt(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

BigFloat log(const BigFloat& x) {
    BigFloat out(x.precision());
    mpfr_log(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

BigFloat BigComplex::log_abs() const {
    BigFloat out = log(norm());
    mpfr_div_2ui(out.raw(), out.raw(), 1, MPFR_RNDN);
    return out;
}

BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    const BigFloat den = b.norm();
    const BigFloat re = (a.re * b.re + a.im * b.im) / den;
    const BigFloat im = (a.im * b.re - a.re * b.im) / den;
    return {re, im};
}

}  // namespace morphic
