#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morphic/fp_polynomial.hpp"
#include "morphic/polynomial.hpp"

namespace morphic {

int moebius(unsigned n);
std::vector<unsigned> divisors(unsigned n);

/// Multiplicity of xi as a root of f^{(n)}(x) - x.
unsigned multiplicity_a_n(const Polynomial& f, const Rational& xi, unsigned n, std::size_t degree_cap = kDefaultDegreeCap);
unsigned multiplicity_a_n(const FpPolynomial& f, std::uint64_t xi, unsigned n,
                          std::size_t degree_cap = kDefaultDegreeCap);

/// Sum over m | n of mu(n/m) a_m(xi).
long moebius_star(const Polynomial& f, const Rational& xi, unsigned n, std::size_t degree_cap = kDefaultDegreeCap);
long moebius_star(const FpPolynomial& f, std::uint64_t xi, unsigned n, std::size_t degree_cap = kDefaultDegreeCap);
/// Moebius transform of a list a_1..a_N (index n - 1).
std::vector<long> moebius_transform(const std::vector<unsigned>& a);

/// Least period of xi, if xi is periodic (searches at most max_steps iterates).
std::optional<unsigned> least_period(const Polynomial& f, const Rational& xi, unsigned max_steps = 256);
std::optional<unsigned> least_period(const FpPolynomial& f, std::uint64_t xi);

/// Derivative of f^{(m)} at xi by the chain rule. Requires least period m.
Rational multiplier(const Polynomial& f, const Rational& xi, unsigned m);
std::uint64_t multiplier(const FpPolynomial& f, std::uint64_t xi, unsigned m);

/// Multiplicative order; nullopt stands for infinite order (including 0).
std::optional<std::uint64_t> multiplier_order(const Rational& lambda);
std::optional<std::uint64_t> multiplier_order(std::uint64_t lambda, const PrimeField& field);

/// Membership in {m} u {m r} u {p^e m r : e >= 1}, the last set only in characteristic p > 0.
struct EssentialPeriods {
    unsigned m = 1;
    std::optional<std::uint64_t> r;
    std::uint64_t characteristic = 0;

    bool contains(std::uint64_t n) const;
    std::vector<unsigned> up_to(unsigned n_max) const;
};

EssentialPeriods essential_periods_predicted(unsigned m, std::optional<std::uint64_t> r, std::uint64_t characteristic);

/// {n <= n_max : a_n*(xi) > 0}, computed from the iterates of f over F_p.
std::vector<unsigned> essential_periods_observed(const FpPolynomial& f, std::uint64_t xi, unsigned n_max,
                                                 std::size_t degree_cap = 1u << 12);

struct DynatomicRecord {
    std::string field;  // "Q" or the prime
    std::string point;
    unsigned n = 0;
    unsigned a_n = 0;
    long a_star_n = 0;
    std::optional<unsigned> least_period;
    std::string multiplier;                 // empty when xi is not periodic
    std::optional<std::uint64_t> multiplier_order;
    bool predicted_essential = false;
};

std::vector<DynatomicRecord> dynatomic_records(const Polynomial& f, const Rational& xi, unsigned n_max,
                                               std::size_t degree_cap = 1u << 12);
std::vector<DynatomicRecord> dynatomic_records(const FpPolynomial& f, std::uint64_t xi, unsigned n_max,
                                               std::size_t degree_cap = 1u << 12);

/// For every residue class rho hit by S: sum of a_n over xi in S with xi = rho mod p
/// is at most the multiplicity of rho for the reduction of f.
bool reduction_multiplicity_check(const Polynomial& f, std::uint64_t p, const std::vector<Rational>& points, unsigned n,
                                  std::size_t degree_cap = 1u << 12);

}  // namespace morphic
