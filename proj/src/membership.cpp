#include "ctc/membership.hpp"

#include "ctc/errors.hpp"
#include "ctc/simplex.hpp"

namespace ctc {

namespace {

// Certificate from a (possibly inexact) Farkas direction: rationalize,
// tighten the bound to the exact vertex maximum, then the inequality is valid
// by construction and outside-ness shows as a positive margin at the point.
std::optional<Inequality> build_certificate(const Vec& farkas_u, const VertexSet& vs,
                                            const Vec& point_f, double* margin) {
  const Index d = vs.dim();
  Inequality cand;
  cand.coeffs = RatVec(d);
  for (Index j = 0; j < d; ++j) cand.coeffs[j] = rationalize(farkas_u[j], 1e-9);
  bool all_zero = true;
  for (Index j = 0; j < d; ++j)
    if (cand.coeffs[j] != 0) all_zero = false;
  if (all_zero) return std::nullopt;
  cand.bound = 0; // placeholder; tightened next
  VertexMaximum mx = maximize_over_vertices(cand, vs);
  cand.bound = mx.value;
  cand = canonicalize(cand);
  double val = evaluate(cand, point_f);
  *margin = val - to_double(cand.bound);
  if (*margin <= 0) return std::nullopt;
  return cand;
}

MembershipResult membership_exact(const RatVec& point, const VertexSet& vs) {
  const Index d = vs.dim();
  const Index n = vs.count();
  RatMat A(d + 1, n);
  for (Index j = 0; j < n; ++j) {
    A.col(j).head(d) = vs.points.row(j).transpose();
    A(d, j) = 1;
  }
  RatVec b(d + 1);
  b.head(d) = point;
  b[d] = 1;

  auto lp = solve_feasibility(A, b);
  MembershipResult res;
  if (lp.feasible) {
    res.inside = true;
    res.weights_exact = lp.solution;
    return res;
  }
  // exact Farkas y = (u, u0): u . v + u0 <= 0 on all vertices, u . p + u0 > 0;
  // tightening the bound to the exact vertex maximum keeps it separating
  Inequality cand;
  cand.coeffs = lp.farkas.head(d);
  cand.bound = 0;
  VertexMaximum mx = maximize_over_vertices(cand, vs);
  cand.bound = mx.value;
  cand = canonicalize(cand);
  Rational margin = evaluate(cand, point) - cand.bound;
  if (margin <= 0) throw NumericalFailure("exact membership produced no valid certificate");
  res.inside = false;
  res.certificate = cand;
  res.margin = to_double(margin);
  return res;
}

} // namespace

MembershipResult membership(const RatVec& point, const VertexSet& vs,
                            const MembershipOptions& opts) {
  if (point.size() != vs.dim()) throw std::invalid_argument("point/vertex basis mismatch");
  if (vs.count() == 0) throw std::invalid_argument("membership against an empty vertex set");
  if (opts.mode == NumberMode::Exact) return membership_exact(point, vs);
  Vec pf(point.size());
  for (Index j = 0; j < point.size(); ++j) pf[j] = to_double(point[j]);
  return membership(pf, vs, opts);
}

MembershipResult membership(const Vec& point, const VertexSet& vs, const MembershipOptions& opts) {
  if (point.size() != vs.dim()) throw std::invalid_argument("point/vertex basis mismatch");
  if (vs.count() == 0) throw std::invalid_argument("membership against an empty vertex set");

  if (opts.mode == NumberMode::Exact) {
    RatVec pr(point.size());
    for (Index j = 0; j < point.size(); ++j) pr[j] = rationalize(point[j], opts.rationalize_eps);
    return membership_exact(pr, vs);
  }

  const Index d = vs.dim();
  const Index n = vs.count();
  Mat A(d + 1, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < d; ++i) A(i, j) = to_double(vs.points(j, i));
    A(d, j) = 1.0;
  }
  Vec b(d + 1);
  b.head(d) = point;
  b[d] = 1.0;

  auto lp = solve_feasibility(A, b, opts.tol);
  MembershipResult res;
  if (lp.feasible && lp.reliable) {
    res.inside = true;
    res.weights_float = lp.solution;
    return res;
  }
  if (!lp.feasible && lp.reliable) {
    res.inside = false;
    res.certificate = build_certificate(lp.farkas.head(d), vs, point, &res.margin);
    if (res.certificate) return res;
  }
  // numerical trouble: escalate to exact arithmetic
  RatVec pr(point.size());
  for (Index j = 0; j < point.size(); ++j) pr[j] = rationalize(point[j], opts.rationalize_eps);
  res = membership_exact(pr, vs);
  res.escalated_to_exact = true;
  return res;
}

MembershipResult membership(const BehaviorF& behavior, const VertexSet& vs,
                            const MembershipOptions& opts) {
  Vec p = behavior.values;
  if (!vs.basis.is_probability()) p = project_behavior(behavior, vs.basis);
  return membership(p, vs, opts);
}

} // namespace ctc
