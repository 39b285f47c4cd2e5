#pragma once

#include "ctc/types.hpp"

namespace ctc {

/// Exact maximizer of f(v) = v.u + v' Q v over the unit sphere |v| = 1
/// (3x3 symmetric Q), via the secular equation of the stationarity condition
/// (lambda I - Q) v = u/2 with lambda >= lambda_max(Q). The linear case Q = 0
/// reduces to v = u/|u|. With u = 0 the top eigenvector wins (deterministic
/// sign). `fallback` is returned when the objective does not depend on v.
Vec3 sphere_max(const Mat3& Q, const Vec3& u, const Vec3& fallback);

} // namespace ctc
