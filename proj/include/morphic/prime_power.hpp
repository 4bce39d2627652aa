#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "morphic/polynomial.hpp"

namespace morphic {

/// Element of Z/p^K, the truncated model of a p-adic integer.
struct PrimePowerResidue {
    std::uint64_t prime = 0;
    unsigned exponent = 0;  // K
    Integer residue;        // in [0, p^K)

    friend bool operator==(const PrimePowerResidue&, const PrimePowerResidue&) = default;
};

/// v_p of a difference of residues: exact below K, otherwise only known to be >= K.
struct TruncatedValuation {
    std::int64_t value = 0;
    bool at_least = false;  // true: the true valuation is >= value (== K)
};

struct PrimePowerOrbit {
    std::vector<PrimePowerResidue> residues;            // f^{(n)}(q) mod p^K, n = 0..n_max
    std::vector<TruncatedValuation> return_valuations;  // v_p(f^{(n)}(q) - q); entry 0 unused
};

/// Coefficients p-integral and leading coefficient a p-adic unit.
bool good_reduction(const Polynomial& f, std::uint64_t p);

/// Orbit of q modulo p^K. Requires good reduction and v_p(q) >= 0.
PrimePowerOrbit orbit_mod_prime_power(const Polynomial& f, const Rational& q, std::uint64_t p, unsigned n_max,
                                      unsigned truncation);

struct TruncationPolicy {
    unsigned initial = 32;
    unsigned ceiling = 8192;
};

/// Exact v_p(f^{(n)}(q) - q) for n = 1..n_max, retrying with doubled truncation
/// while any entry is only bounded below. Entries n that are multiples of
/// `exact_period` (a known exact period of q, 0 if none) are nullopt.
/// Throws ResourceError when the ceiling is reached.
std::vector<std::optional<std::int64_t>> return_valuations(const Polynomial& f, const Rational& q, std::uint64_t p,
                                                           unsigned n_max, unsigned exact_period = 0,
                                                           const TruncationPolicy& policy = {});

}  // namespace morphic
