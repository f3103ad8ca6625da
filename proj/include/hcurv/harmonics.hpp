#pragma once

#include "hcurv/jet.hpp"

namespace hcurv {

/// Real spherical harmonic Y_{l,m} (orthonormal on the unit sphere, no
/// Condon-Shortley phase), l <= 4, evaluated in jet arithmetic.
/// x and s are the jets of cos(theta) and sin(theta); phi is the longitude jet.
/// m = 0 uses the zonal polynomial; m > 0 pairs with cos(m phi), m < 0 with
/// sin(|m| phi), both carrying the sqrt(2) factor.
Jet real_sph_harm(int l, int m, const Jet& x, const Jet& s, const Jet& phi);

} // namespace hcurv
