#include "ctc/spheremax.hpp"

#include <cmath>

namespace ctc {

namespace {

// |b / (lam - w)|^2 for the diagonalized secular function
double norm2_at(const Vec3& b, const Vec3& w, double lam) {
  double s = 0.0;
  for (int i = 0; i < 3; ++i) {
    const double d = lam - w[i];
    const double t = b[i] / d;
    s += t * t;
  }
  return s;
}

} // namespace

Vec3 sphere_max(const Mat3& Q, const Vec3& u, const Vec3& fallback) {
  const double qscale = Q.cwiseAbs().maxCoeff();
  const double uscale = u.norm();
  if (qscale < 1e-300 && uscale < 1e-300) return fallback;

  if (qscale < 1e-14 * std::max(1.0, uscale)) {
    // effectively linear
    return u / uscale;
  }

  Mat3 Qs = 0.5 * (Q + Q.transpose());
  Eigen::SelfAdjointEigenSolver<Mat3> es(Qs);
  const Vec3 w = es.eigenvalues(); // ascending
  const Mat3 E = es.eigenvectors();
  const Vec3 b = E.transpose() * (0.5 * u);
  const double wmax = w[2];

  if (uscale < 1e-300) {
    Vec3 v = E.col(2);
    // deterministic sign: largest-magnitude component positive
    int k = 0;
    v.cwiseAbs().maxCoeff(&k);
    return v[k] >= 0 ? v : Vec3(-v);
  }

  // components on the top eigenspace (handle near-degenerate top pair)
  double btop2 = 0.0;
  for (int i = 0; i < 3; ++i)
    if (wmax - w[i] < 1e-12 * std::max(1.0, std::fabs(wmax))) btop2 += b[i] * b[i];

  double lo, hi;
  if (btop2 > 1e-280) {
    lo = wmax + std::sqrt(btop2) * 0.5; // norm2(lo) >= btop2 / (lo-wmax)^2 = 4 > 1
    hi = wmax + std::sqrt(btop2) + b.norm() + 1.0;
  } else {
    // hard case: try lambda = wmax with slack on the top eigenvector
    Vec3 y = Vec3::Zero();
    double s2 = 0.0;
    int top = 2;
    for (int i = 0; i < 3; ++i) {
      if (wmax - w[i] < 1e-12 * std::max(1.0, std::fabs(wmax))) continue;
      y[i] = b[i] / (wmax - w[i]);
      s2 += y[i] * y[i];
    }
    if (s2 <= 1.0) {
      y[top] = std::sqrt(std::max(0.0, 1.0 - s2));
      return E * y;
    }
    lo = wmax + 1e-18;
    hi = wmax + b.norm() + 1.0;
  }
  while (norm2_at(b, w, hi) > 1.0) hi = wmax + 2.0 * (hi - wmax);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (norm2_at(b, w, mid) > 1.0) lo = mid;
    else hi = mid;
  }
  const double lam = 0.5 * (lo + hi);
  Vec3 y;
  for (int i = 0; i < 3; ++i) y[i] = b[i] / (lam - w[i]);
  Vec3 v = E * y;
  const double n = v.norm();
  return n > 0 ? Vec3(v / n) : fallback;
}

} // namespace ctc
