#pragma once

#include "rpia/types.hpp"

namespace rpia {

// Curve point sets 1-4: rose (2D), blob (2D), helix (3D), granny knot (3D).
// m+1 samples, uniform in the curve parameter, endpoints included.
Matrix gen_curve(int example_id, Index m);

// Surface point sets 5-8: boy, tranguloid trefoil, Verrill minimal, bent
// horns. (m+1) x (p+1) samples on a uniform parameter lattice.
Grid3 gen_surface(int example_id, Index m, Index p);

}  // namespace rpia
