#pragma once

#include <array>
#include <optional>
#include <vector>

#include "ctc/scenario.hpp"

namespace ctc {

/// Dichotomic qubit observable O = cos(phi) sin(theta) X + sin(phi) sin(theta) Y
/// + cos(theta) Z. Outcome 0 is the +1 eigenvalue branch.
struct Observable {
  double theta = 0.0;
  double phi = 0.0;

  Mat2 matrix() const;
  Vec3 bloch() const;
  /// Projector onto the outcome-`a` eigenspace, a in {0, 1}.
  Mat2 projector(int a) const;
};

Observable observable_from_bloch(const Vec3& direction);

/// Density matrix of dimension 2 or 4.
struct QState {
  CxMat rho;

  int dim() const { return static_cast<int>(rho.rows()); }
  static QState pure(const CxVec& amplitudes);
  static QState maximally_mixed(int dim);
  static QState from_bloch(const Vec3& r); // qubit (I + r.sigma)/2, |r| <= 1
  double purity() const;
  /// Throws if not Hermitian/unit-trace/PSD within tolerances.
  void validate(double tol = 1e-10) const;
};

struct MeasurementBranch {
  double probability = 0.0;
  Mat2 post_state;
  bool degenerate = false; // probability below threshold; post state is a placeholder
};

/// Projective qubit measurement: probabilities tr[P_a rho], post states
/// P_a rho P_a / tr. Branches with probability < 1e-14 are flagged and carry
/// the maximally mixed placeholder.
std::array<MeasurementBranch, 2> measure_projective(const QState& state, const Observable& obs);

/// p(a1..an | x1..xn) for a chain of projective measurements on one qubit.
/// settings[i] lists the observables available at step i.
BehaviorF sequential_behavior(const QState& initial,
                              const std::vector<std::vector<Observable>>& settings);

/// p(a,b|x,y) = tr[(P^x_a tensor P^y_b) rho] on a two-qubit state.
BehaviorF bipartite_behavior(const QState& state4, const std::vector<Observable>& alice,
                             const std::vector<Observable>& bob,
                             const std::vector<MessageEdge>& declared_messages = {});

/// One-way communication protocol: Bob's observable depends on m = message[x][a].
struct CommProtocol {
  std::vector<Observable> alice;            // per setting x
  std::vector<std::vector<int>> message;    // message[x][a] in {0..dim-1}
  std::vector<std::vector<Observable>> bob; // bob[y][m]

  int message_dim() const;
  bool message_depends_on_outcome() const;
  void validate() const;
};

BehaviorF comm_augmented_behavior(const QState& state4, const CommProtocol& protocol);

/// Two-qubit family with concurrence kappa:
/// (sqrt(1+kappa)(|00>+|11>) + sqrt(1-kappa)(|01>+|10>)) / 2.
QState family_state(double kappa);

/// Concurrence 2|a00 a11 - a01 a10| of a pure two-qubit state.
/// Rejects mixed states (purity < 1 - 1e-10).
double concurrence_pure(const QState& state4);

/// Shannon entropy (bits) of the message induced by the protocol.
/// xa_joint, when given, is the joint distribution over (x, a); otherwise the
/// message must not depend on the outcome and x_dist suffices.
double message_entropy(const CommProtocol& protocol, const Vec& x_dist,
                       const Mat* xa_joint = nullptr);

// --- correlators -----------------------------------------------------------

/// Signed expectation sum over outputs of (-1)^(sum of outcomes at `steps`)
/// p(outputs | inputs), with unfixed inputs averaged uniformly.
double signed_correlator(const BehaviorF& b, const std::vector<int>& steps,
                         const std::vector<std::optional<int>>& inputs);

double ab_correlator(const BehaviorF& b, int x, int y);              // steps {0,1}
double bc_correlator(const BehaviorF& b, int x, int y, int z);       // steps {1,2}
double abc_correlator(const BehaviorF& b, int x, int y, int z);      // steps {0,1,2}
double a_mean(const BehaviorF& b, int x);                            // step {0}
double b_mean(const BehaviorF& b, int x, int y);                     // step {1}

} // namespace ctc
