#include "morphic/prime_power.hpp"

#include "morphic/errors.hpp"

namespace morphic {

bool good_reduction(const Polynomial& f, std::uint64_t p) {
    if (f.is_zero()) return false;
    for (const auto& c : f.coeffs()) {
        if (valuation(c, p) < Valuation(0)) return false;
    }
    return valuation(f.leading(), p) == Valuation(0);
}

PrimePowerOrbit orbit_mod_prime_power(const Polynomial& f, const Rational& q, std::uint64_t p, unsigned n_max,
                                      unsigned truncation) {
    if (!is_prime(p)) throw InputError(std::to_string(p) + " is not prime");
    if (truncation == 0) throw PreconditionError("truncation must be positive");
    if (!good_reduction(f, p)) throw BadReductionError("orbit modulo p^K needs good reduction");
    if (valuation(q, p) < Valuation(0)) throw PreconditionError("orbit modulo p^K needs v_p(q) >= 0");

    const Integer modulus = power(Integer(static_cast<unsigned long>(p)), truncation);
    std::vector<Integer> coeffs;
    for (const auto& c : f.coeffs()) coeffs.push_back(reduce_mod(c, modulus));

    PrimePowerOrbit out;
    out.residues.reserve(n_max + 1);
    out.return_valuations.resize(n_max + 1);
    const Integer start = reduce_mod(q, modulus);
    Integer x = start;
    out.residues.push_back({p, truncation, x});
    for (unsigned n = 1; n <= n_max; ++n) {
        Integer acc = 0;
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = (acc * x + *it) % modulus;
        x = acc;
        out.residues.push_back({p, truncation, x});
        Integer diff = x - start;
        if (diff < 0) diff += modulus;
        if (diff == 0) {
            out.return_valuations[n] = {static_cast<std::int64_t>(truncation), true};
        } else {
            out.return_valuations[n] = {valuation(diff, p).value(), false};
        }
    }
    return out;
}

std::vector<std::optional<std::int64_t>> return_valuations(const Polynomial& f, const Rational& q, std::uint64_t p,
                                                           unsigned n_max, unsigned exact_period,
                                                           const TruncationPolicy& policy) {
    std::vector<std::optional<std::int64_t>> out(n_max + 1);
    for (unsigned k = policy.initial; k <= policy.ceiling; k *= 2) {
        const auto orbit = orbit_mod_prime_power(f, q, p, n_max, k);
        bool resolved = true;
        for (unsigned n = 1; n <= n_max; ++n) {
            if (exact_period != 0 && n % exact_period == 0) {
                out[n].reset();
                continue;
            }
            const auto& tv = orbit.return_valuations[n];
            if (tv.at_least) {
                resolved = false;
                break;
            }
            out[n] = tv.value;
        }
        if (resolved) return out;
    }
    throw ResourceError("p-adic truncation ceiling reached while resolving orbit valuations");
}

}  // namespace morphic
