#pragma once

#include <vector>

#include "ctc/rational.hpp"
#include "ctc/types.hpp"

namespace ctc {

/// Feasibility of { x >= 0 : A x = b } via a phase-1 revised simplex.
/// Exact scalar: Bland's rule (anti-cycling, always terminates).
/// Float scalar: Dantzig pricing with tolerances, Bland fallback on stall.
/// When infeasible, `farkas` y satisfies yᵀA <= 0 and yᵀb > 0.
template <typename Scalar>
struct FeasibilityResult {
  bool feasible = false;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> solution; // size n when feasible
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> farkas;   // size m when infeasible
  int iterations = 0;
  bool reliable = true; // float mode: false when tolerances look untrustworthy
};

FeasibilityResult<Rational> solve_feasibility(const RatMat& A, const RatVec& b);
FeasibilityResult<double> solve_feasibility(const Mat& A, const Vec& b, double tol = 1e-9);

} // namespace ctc
