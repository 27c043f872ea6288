#pragma once

#include "ionlab/geometry.hpp"
#include "ionlab/random.hpp"

namespace ionlab::lab {

/// N points uniform in the ball of radius `radius` in R^d.
PointConfiguration sample_ball(Rng& rng, int N, int d, double radius = 1.0);

/// N points with uniform directions in R^3 and log-uniform radii in
/// [r_lo, r_hi]; spreads points over several length scales.
PointConfiguration sample_log_radial(Rng& rng, int N, double r_lo, double r_hi);

/// N points drawn i.i.d. from the radial density with radii ~ Gamma(3, 1)
/// (density proportional to e^{-r}) and uniform directions.
PointConfiguration sample_exponential_cloud(Rng& rng, int N);

/// Uniform direction on the unit sphere S^2.
void sample_direction(Rng& rng, double out[3]);

}  // namespace ionlab::lab
