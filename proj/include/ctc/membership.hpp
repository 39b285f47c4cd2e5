#pragma once

#include <optional>

#include "ctc/dd.hpp"
#include "ctc/model.hpp"

namespace ctc {

enum class NumberMode { Exact, Float };

struct MembershipOptions {
  NumberMode mode = NumberMode::Float;
  double tol = 1e-9;
  double rationalize_eps = 1e-12; // float points entering exact mode
};

struct MembershipResult {
  bool inside = false;
  RatVec weights_exact;           // exact mode, inside
  Vec weights_float;              // float mode, inside
  std::optional<Inequality> certificate; // outside: separating inequality (canonical)
  double margin = 0.0;            // certificate value at the point minus its bound
  bool escalated_to_exact = false;
};

/// Convex-combination feasibility of `point` against the vertex rows.
/// Outside points carry a validated separating certificate: every vertex
/// satisfies it exactly and the point violates it by `margin` > 0.
MembershipResult membership(const RatVec& point, const VertexSet& vs,
                            const MembershipOptions& opts = {});
MembershipResult membership(const Vec& point, const VertexSet& vs,
                            const MembershipOptions& opts = {});

/// Probability-basis behaviors are projected onto the vertex set's basis first.
MembershipResult membership(const BehaviorF& behavior, const VertexSet& vs,
                            const MembershipOptions& opts = {});

} // namespace ctc
