#pragma once

#include <string>
#include <string_view>

#include "morphic/polynomial.hpp"

namespace morphic {

enum class GalleryKind { power, chebyshev, chebyshev_monic };

/// Accepts "power", "chebyshev" and "chebyshev-monic".
GalleryKind parse_gallery_kind(std::string_view name);
std::string to_string(GalleryKind kind);

/// T_d from T_0 = 1, T_1 = x, T_{k+1} = 2x T_k - T_{k-1}.
Polynomial chebyshev_polynomial(unsigned d);

/// x^d, T_d, or the monic integral conjugate 2 T_d(x/2).
Polynomial build_gallery(GalleryKind kind, unsigned d);

}  // namespace morphic
