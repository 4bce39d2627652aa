#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "morphic/newton_polygon.hpp"
#include "morphic/polynomial.hpp"
#include "morphic/prime_power.hpp"

namespace morphic {

struct PadicContext {
    std::uint64_t p = 2;
    unsigned truncation = 32;
    bool natural_log = true;  // false reports values in valuation units only

    explicit PadicContext(std::uint64_t prime, unsigned k = 32, bool use_log = true);
    double log_p() const;
};

enum class PadicMethod { closed_form, periodic_sum, iterate };
std::string to_string(PadicMethod m);

struct PadicHeightResult {
    Rational value_in_valuation_units;  // the height divided by log p
    double value = 0.0;                 // value_in_valuation_units * log p
    unsigned depth_n = 0;
    PadicMethod method = PadicMethod::closed_form;
    Integer fn_valuation;               // v_p of f_n(q), after removing the factor (x - q)^{a_n(q)}
    unsigned deflation = 0;             // a_n(q); 0 when q is not periodic of period dividing n
};

/// max(0, -v_p(q)) log p. Requires good reduction.
PadicHeightResult local_height_padic(const Polynomial& f, std::uint64_t p, const Rational& q);

/// max(0, -v_p(f^{(n)}(q))) / d^n from the exact rational orbit; no reduction
/// hypothesis. Throws ResourceError once an iterate exceeds max_bits.
PadicHeightResult padic_iterate_height(const Polynomial& f, std::uint64_t p, const Rational& q, unsigned n,
                                       std::size_t max_bits = std::size_t{1} << 22);

/// (1/d^n) sum over xi != q of log|xi - q|_p, via the product of the roots of
/// f_n = f^{(n)}(x) - x: (-v_p(f_n(q)) + v_p(B_n)) / d^n in valuation units.
/// When q is periodic of period dividing n the factor (x - q)^{a_n(q)} is
/// removed from f_n before evaluating at q.
PadicHeightResult periodic_sum_padic(const Polynomial& f, std::uint64_t p, const Rational& q, unsigned n);
/// Values for n = 1..n_max from a single orbit computation.
std::vector<PadicHeightResult> periodic_sum_padic_series(const Polynomial& f, std::uint64_t p, const Rational& q,
                                                         unsigned n_max);

/// Literal evaluation for small d^n: exact division of f_n by (x - q)^{a_n(q)}
/// followed by evaluation at q. Used to cross-check the orbit-based routine.
PadicHeightResult periodic_sum_padic_by_division(const Polynomial& f, std::uint64_t p, const Rational& q,
                                                 unsigned n, std::size_t degree_cap = 1u << 12);

/// Order of vanishing and leading coefficient of f^{(n)}(q + t) - q - t at t = 0,
/// for q exactly periodic with period dividing n.
struct LocalExpansion {
    unsigned order = 0;
    Rational leading;
};
LocalExpansion periodic_local_expansion(const Polynomial& f, const Rational& q, unsigned n);

struct DiophantineReport {
    std::int64_t c = 0;                          // least C >= 0 with v <= v_p(n) + C for all n
    std::vector<unsigned> violations;            // n exceeding the candidate bound
    std::vector<std::int64_t> valuations;        // index n - 1: v_p(f_n(q)), deflated when q is periodic
    std::vector<bool> deflated;                  // index n - 1: whether the factor at q was removed
};

/// Scans n = 1..n_max. With a candidate C, violations lists n with
/// v_p(f_n(q)) > v_p(n) + candidate; without one, it is checked against the computed C.
DiophantineReport diophantine_bound_check(const Polynomial& f, std::uint64_t p, const Rational& q, unsigned n_max,
                                          std::optional<std::int64_t> candidate = std::nullopt);

struct SmallPeriodicRecord {
    unsigned k = 0;
    Rational min_slope;          // a periodic point xi with |xi - zeta|_p = p^{min_slope} exists
    NewtonPolygon polygon;       // of (g^{(k)}(x) - x) / x, g the map recentred at zeta
};

/// Requires zeta exactly periodic of least period `period` with |(f^{(period)})'(zeta)|_p > 1.
std::vector<SmallPeriodicRecord> small_periodic_valuations(const Polynomial& f, std::uint64_t p, const Rational& zeta,
                                                           unsigned period, unsigned k_max,
                                                           std::size_t degree_cap = kDefaultDegreeCap);

struct UnitProductResult {
    Rational constant;  // value at 0 of (f^{(p^k)}(x) - x) / (f^{(p^{k-1})}(x) - x)
    Valuation valuation;
};

/// Requires good reduction and f(0) = 0.
UnitProductResult unit_product_check(const Polynomial& f, std::uint64_t p, unsigned k,
                                     std::size_t degree_cap = kDefaultDegreeCap);

}  // namespace morphic
