#include "morphic/gallery.hpp"

#include "morphic/errors.hpp"

namespace morphic {

GalleryKind parse_gallery_kind(std::string_view name) {
    if (name == "power") return GalleryKind::power;
    if (name == "chebyshev") return GalleryKind::chebyshev;
    if (name == "chebyshev-monic") return GalleryKind::chebyshev_monic;
    throw InputError("unknown morphism kind '" + std::string(name) + "'");
}

std::string to_string(GalleryKind kind) {
    switch (kind) {
        case GalleryKind::power: return "power";
        case GalleryKind::chebyshev: return "chebyshev";
        case GalleryKind::chebyshev_monic: return "chebyshev-monic";
    }
    return "unknown";
}

Polynomial chebyshev_polynomial(unsigned d) {
    Polynomial prev = Polynomial::constant(1);
    if (d == 0) return prev;
    Polynomial cur = Polynomial::identity();
    const Polynomial two_x = Polynomial::monomial(2, 1);
    for (unsigned k = 1; k < d; ++k) {
        Polynomial next = two_x * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

Polynomial build_gallery(GalleryKind kind, unsigned d) {
    if (d < 2) throw InputError("gallery maps need degree >= 2");
    switch (kind) {
        case GalleryKind::power: return Polynomial::monomial(1, d);
        case GalleryKind::chebyshev: return chebyshev_polynomial(d);
        case GalleryKind::chebyshev_monic: return conjugate_linear(chebyshev_polynomial(d), 2, 0);
    }
    throw InputError("unknown gallery kind");
}

}  // namespace morphic
