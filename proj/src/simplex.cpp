#include "ctc/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ctc {

namespace {

template <typename Scalar>
struct Traits;

template <>
struct Traits<Rational> {
  static bool positive(const Rational& x, double) { return x > 0; }
  static bool negative(const Rational& x, double) { return x < 0; }
  static double magnitude(const Rational& x) { return std::fabs(to_double(x)); }
};

template <>
struct Traits<double> {
  static bool positive(double x, double tol) { return x > tol; }
  static bool negative(double x, double tol) { return x < -tol; }
  static double magnitude(double x) { return std::fabs(x); }
};

// Phase-1 revised simplex with an explicit basis inverse. Artificial columns
// never re-enter once they leave the basis.
template <typename Scalar>
FeasibilityResult<Scalar> phase1(const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A0,
                                 const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& b0, double tol,
                                 bool bland_always) {
  using Mx = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vx = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  const Index m = A0.rows();
  const Index n = A0.cols();

  // flip rows so b >= 0; artificial basis = identity
  Mx A = A0;
  Vx b = b0;
  std::vector<int> row_sign(static_cast<size_t>(m), 1);
  for (Index i = 0; i < m; ++i)
    if (b[i] < Scalar(0)) {
      A.row(i) = -A.row(i);
      b[i] = -b[i];
      row_sign[static_cast<size_t>(i)] = -1;
    }

  Mx binv = Mx::Identity(m, m);
  std::vector<Index> basis(static_cast<size_t>(m)); // >= n means artificial row j - n
  std::vector<char> in_basis(static_cast<size_t>(n), 0);
  for (Index i = 0; i < m; ++i) basis[static_cast<size_t>(i)] = n + i;
  Vx xb = b;

  FeasibilityResult<Scalar> res;
  const bool exact = std::is_same_v<Scalar, Rational>;
  const int float_cap = static_cast<int>(64 + 16 * (m + n));
  const int max_iters = exact ? std::numeric_limits<int>::max() : float_cap;
  int it = 0;
  for (; it < max_iters; ++it) {
    // dual prices y = c_B (row vector) * binv; artificial cost 1, structural 0
    Vx y = Vx::Zero(m);
    for (Index i = 0; i < m; ++i)
      if (basis[static_cast<size_t>(i)] >= n) y += binv.row(i).transpose();

    // price structural columns: rc_j = -y . A_j ; entering needs rc < 0
    const bool use_bland = bland_always || it > float_cap / 2;
    Index enter = -1;
    Scalar best_rc = Scalar(0);
    for (Index j = 0; j < n; ++j) {
      if (in_basis[static_cast<size_t>(j)]) continue;
      Scalar rc = Scalar(0);
      for (Index i = 0; i < m; ++i)
        if (A(i, j) != Scalar(0)) rc -= y[i] * A(i, j);
      if (Traits<Scalar>::negative(rc, tol)) {
        if (use_bland) { enter = j; break; }
        if (enter < 0 || rc < best_rc) { enter = j; best_rc = rc; }
      }
    }
    if (enter < 0) break; // optimal

    Vx dir = binv * A.col(enter);
    // ratio test; Bland tie-break on smallest basis index
    Index leave = -1;
    Scalar best_ratio = Scalar(0);
    for (Index i = 0; i < m; ++i) {
      if (!Traits<Scalar>::positive(dir[i], tol)) continue;
      Scalar ratio = xb[i] / dir[i];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[static_cast<size_t>(i)] < basis[static_cast<size_t>(leave)])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break; // unbounded direction cannot happen in phase 1; stop defensively

    // pivot: update basis inverse and solution
    Scalar piv = dir[leave];
    binv.row(leave) /= piv;
    xb[leave] /= piv;
    for (Index i = 0; i < m; ++i) {
      if (i == leave || dir[i] == Scalar(0)) continue;
      binv.row(i) -= dir[i] * binv.row(leave);
      xb[i] -= dir[i] * xb[leave];
    }
    if (basis[static_cast<size_t>(leave)] < n) in_basis[static_cast<size_t>(basis[static_cast<size_t>(leave)])] = 0;
    basis[static_cast<size_t>(leave)] = enter;
    in_basis[static_cast<size_t>(enter)] = 1;
  }
  res.iterations = it;

  Scalar infeas = Scalar(0);
  for (Index i = 0; i < m; ++i)
    if (basis[static_cast<size_t>(i)] >= n) infeas += xb[i];

  if (!Traits<Scalar>::positive(infeas, tol)) {
    res.feasible = true;
    res.solution = Vx::Zero(n);
    for (Index i = 0; i < m; ++i)
      if (basis[static_cast<size_t>(i)] < n) res.solution[basis[static_cast<size_t>(i)]] = xb[i];
    if constexpr (std::is_same_v<Scalar, double>) {
      // sanity: residual must be consistent with the tolerance
      double resid = (A0 * res.solution - b0).cwiseAbs().maxCoeff();
      double worst_neg = std::min(0.0, res.solution.minCoeff());
      res.reliable = resid <= 64 * tol * (1.0 + b0.cwiseAbs().maxCoeff()) && worst_neg >= -tol;
    }
  } else {
    res.feasible = false;
    // y from the final basis prices certifies infeasibility (undo row flips)
    Vx y = Vx::Zero(m);
    for (Index i = 0; i < m; ++i)
      if (basis[static_cast<size_t>(i)] >= n) y += binv.row(i).transpose();
    for (Index i = 0; i < m; ++i)
      if (row_sign[static_cast<size_t>(i)] < 0) y[i] = -y[i];
    res.farkas = y;
    if constexpr (std::is_same_v<Scalar, double>) {
      Vec yA = A0.transpose() * y;
      res.reliable = yA.maxCoeff() <= 64 * tol && y.dot(b0) > tol;
    }
  }
  return res;
}

} // namespace

FeasibilityResult<Rational> solve_feasibility(const RatMat& A, const RatVec& b) {
  return phase1<Rational>(A, b, 0.0, /*bland_always=*/true);
}

FeasibilityResult<double> solve_feasibility(const Mat& A, const Vec& b, double tol) {
  return phase1<double>(A, b, tol, /*bland_always=*/false);
}

} // namespace ctc
