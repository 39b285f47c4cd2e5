#include "ctc/quantum.hpp"

#include <cmath>
#include <unsupported/Eigen/KroneckerProduct>

namespace ctc {

namespace {
constexpr double kDegenerateProb = 1e-14;
const Cx kI(0.0, 1.0);
} // namespace

Mat2 Observable::matrix() const {
  Vec3 n = bloch();
  Mat2 m;
  m << Cx(n.z(), 0), Cx(n.x(), -n.y()), Cx(n.x(), n.y()), Cx(-n.z(), 0);
  return m;
}

Vec3 Observable::bloch() const {
  return {std::cos(phi) * std::sin(theta), std::sin(phi) * std::sin(theta), std::cos(theta)};
}

Mat2 Observable::projector(int a) const {
  if (a != 0 && a != 1) throw std::invalid_argument("outcome must be 0 or 1");
  const double sign = a == 0 ? 1.0 : -1.0;
  return 0.5 * (Mat2::Identity() + sign * matrix());
}

Observable observable_from_bloch(const Vec3& direction) {
  Vec3 n = direction;
  double len = n.norm();
  if (len < 1e-15) throw std::invalid_argument("zero Bloch direction");
  n /= len;
  return Observable{std::acos(std::clamp(n.z(), -1.0, 1.0)), std::atan2(n.y(), n.x())};
}

QState QState::pure(const CxVec& amplitudes) {
  if (amplitudes.size() != 2 && amplitudes.size() != 4)
    throw std::invalid_argument("state dimension must be 2 or 4");
  CxVec psi = amplitudes.normalized();
  QState s{psi * psi.adjoint()};
  return s;
}

QState QState::maximally_mixed(int dim) {
  if (dim != 2 && dim != 4) throw std::invalid_argument("state dimension must be 2 or 4");
  return QState{CxMat::Identity(dim, dim) / static_cast<double>(dim)};
}

QState QState::from_bloch(const Vec3& r) {
  if (r.norm() > 1.0 + 1e-12) throw std::invalid_argument("Bloch vector outside the unit ball");
  Mat2 rho = 0.5 * Mat2::Identity();
  Mat2 sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, -kI, kI, 0;
  sz << 1, 0, 0, -1;
  rho += 0.5 * (r.x() * sx + r.y() * sy + r.z() * sz);
  return QState{rho};
}

double QState::purity() const { return (rho * rho).trace().real(); }

void QState::validate(double tol) const {
  if (dim() != 2 && dim() != 4) throw std::invalid_argument("state dimension must be 2 or 4");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("state is not Hermitian");
  if (std::abs(rho.trace() - Cx(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument("state trace differs from 1");
  Eigen::SelfAdjointEigenSolver<CxMat> es(rho);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("state has a negative eigenvalue");
}

std::array<MeasurementBranch, 2> measure_projective(const QState& state, const Observable& obs) {
  if (state.dim() != 2) throw std::invalid_argument("projective chain expects a qubit state");
  std::array<MeasurementBranch, 2> branches;
  for (int a = 0; a < 2; ++a) {
    Mat2 p = obs.projector(a);
    double prob = (p * state.rho).trace().real();
    prob = std::max(prob, 0.0);
    MeasurementBranch& br = branches[static_cast<size_t>(a)];
    br.probability = prob;
    if (prob < kDegenerateProb) {
      br.degenerate = true;
      br.post_state = 0.5 * Mat2::Identity();
    } else {
      br.post_state = (p * state.rho * p) / prob;
    }
  }
  return branches;
}

BehaviorF sequential_behavior(const QState& initial,
                              const std::vector<std::vector<Observable>>& settings) {
  if (initial.dim() != 2) throw std::invalid_argument("sequential chain starts from a qubit");
  std::vector<Step> steps;
  for (const auto& s : settings) {
    if (s.empty()) throw std::invalid_argument("each step needs at least one setting");
    steps.push_back({static_cast<int>(s.size()), 2});
  }
  Scenario sc(steps);
  BehaviorF b{sc, Vec::Zero(sc.behavior_length())};

  const int n = sc.num_steps();
  std::vector<int> in(static_cast<size_t>(n)), out(static_cast<size_t>(n));
  for (Index ctx = 0; ctx < sc.input_contexts(); ++ctx) {
    sc.input_coordinates(ctx, in);
    // walk the outcome tree
    std::function<void(int, double, const QState&)> walk = [&](int step, double acc,
                                                               const QState& state) {
      if (step == n) {
        b.values[ctx * sc.output_tuples() + sc.output_index(out)] = acc;
        return;
      }
      const Observable& obs =
          settings[static_cast<size_t>(step)][static_cast<size_t>(in[static_cast<size_t>(step)])];
      auto branches = measure_projective(state, obs);
      for (int a = 0; a < 2; ++a) {
        out[static_cast<size_t>(step)] = a;
        const auto& br = branches[static_cast<size_t>(a)];
        if (br.degenerate) {
          // excluded branch: probability (essentially zero) spreads over the subtree
          Index rest = 1;
          for (int j = step + 1; j < n; ++j) rest *= 2;
          std::function<void(int)> fill = [&](int s2) {
            if (s2 == n) {
              b.values[ctx * sc.output_tuples() + sc.output_index(out)] =
                  acc * br.probability / static_cast<double>(rest);
              return;
            }
            for (int v = 0; v < 2; ++v) {
              out[static_cast<size_t>(s2)] = v;
              fill(s2 + 1);
            }
          };
          fill(step + 1);
          continue;
        }
        walk(step + 1, acc * br.probability, QState{br.post_state});
      }
    };
    walk(0, 1.0, initial);
  }
  return b;
}

BehaviorF bipartite_behavior(const QState& state4, const std::vector<Observable>& alice,
                             const std::vector<Observable>& bob,
                             const std::vector<MessageEdge>& declared_messages) {
  if (state4.dim() != 4) throw std::invalid_argument("bipartite behavior needs a two-qubit state");
  Scenario sc({{static_cast<int>(alice.size()), 2}, {static_cast<int>(bob.size()), 2}},
              declared_messages);
  BehaviorF b{sc, Vec::Zero(sc.behavior_length())};
  for (int x = 0; x < static_cast<int>(alice.size()); ++x)
    for (int y = 0; y < static_cast<int>(bob.size()); ++y)
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) {
          Mat4 op = Eigen::kroneckerProduct(alice[static_cast<size_t>(x)].projector(a),
                                            bob[static_cast<size_t>(y)].projector(bb));
          b.values[sc.index({x, y}, {a, bb})] = std::max(0.0, (op * state4.rho).trace().real());
        }
  return b;
}

int CommProtocol::message_dim() const {
  int d = 1;
  for (const auto& row : message)
    for (int m : row) d = std::max(d, m + 1);
  return d;
}

bool CommProtocol::message_depends_on_outcome() const {
  for (const auto& row : message)
    if (row.size() > 1 && row[0] != row[1]) return true;
  return false;
}

void CommProtocol::validate() const {
  if (alice.empty() || bob.empty()) throw std::invalid_argument("protocol needs observables");
  if (message.size() != alice.size())
    throw std::invalid_argument("message table must cover every Alice setting");
  const int d = message_dim();
  for (const auto& row : message) {
    if (row.size() != 2) throw std::invalid_argument("message table rows are per outcome a=0,1");
    for (int m : row)
      if (m < 0 || m >= d) throw std::invalid_argument("message value out of range");
  }
  for (const auto& row : bob)
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("Bob needs one observable per (setting, message) pair");
}

BehaviorF comm_augmented_behavior(const QState& state4, const CommProtocol& protocol) {
  if (state4.dim() != 4) throw std::invalid_argument("comm behavior needs a two-qubit state");
  protocol.validate();
  const int nx = static_cast<int>(protocol.alice.size());
  const int ny = static_cast<int>(protocol.bob.size());
  Scenario sc({{nx, 2}, {ny, 2}}, {{0, 1, protocol.message_dim()}});
  BehaviorF b{sc, Vec::Zero(sc.behavior_length())};
  for (int x = 0; x < nx; ++x)
    for (int a = 0; a < 2; ++a) {
      const int m = protocol.message[static_cast<size_t>(x)][static_cast<size_t>(a)];
      for (int y = 0; y < ny; ++y)
        for (int bb = 0; bb < 2; ++bb) {
          Mat4 op = Eigen::kroneckerProduct(
              protocol.alice[static_cast<size_t>(x)].projector(a),
              protocol.bob[static_cast<size_t>(y)][static_cast<size_t>(m)].projector(bb));
          b.values[sc.index({x, y}, {a, bb})] = std::max(0.0, (op * state4.rho).trace().real());
        }
    }
  return b;
}

QState family_state(double kappa) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in [0, 1]");
  CxVec amp(4);
  const double p = 0.5 * std::sqrt(1.0 + kappa);
  const double q = 0.5 * std::sqrt(1.0 - kappa);
  amp << Cx(p, 0), Cx(q, 0), Cx(q, 0), Cx(p, 0);
  return QState::pure(amp);
}

double concurrence_pure(const QState& state4) {
  if (state4.dim() != 4) throw std::invalid_argument("concurrence needs a two-qubit state");
  if (state4.purity() < 1.0 - 1e-10)
    throw std::invalid_argument("concurrence_pure rejects mixed states");
  Eigen::SelfAdjointEigenSolver<CxMat> es(state4.rho);
  CxVec psi = es.eigenvectors().col(3); // top eigenvector of a pure state
  return 2.0 * std::abs(psi[0] * psi[3] - psi[1] * psi[2]);
}

double message_entropy(const CommProtocol& protocol, const Vec& x_dist, const Mat* xa_joint) {
  protocol.validate();
  const int nx = static_cast<int>(protocol.alice.size());
  const int d = protocol.message_dim();
  Vec pm = Vec::Zero(d);
  if (xa_joint != nullptr) {
    if (xa_joint->rows() != nx || xa_joint->cols() != 2)
      throw std::invalid_argument("joint (x, a) distribution shape mismatch");
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < 2; ++a)
        pm[protocol.message[static_cast<size_t>(x)][static_cast<size_t>(a)]] += (*xa_joint)(x, a);
  } else {
    if (protocol.message_depends_on_outcome())
      throw std::invalid_argument(
          "message depends on the outcome; supply the joint (x, a) distribution");
    if (x_dist.size() != nx) throw std::invalid_argument("x distribution length mismatch");
    for (int x = 0; x < nx; ++x) pm[protocol.message[static_cast<size_t>(x)][0]] += x_dist[x];
  }
  double h = 0.0;
  for (int m = 0; m < d; ++m)
    if (pm[m] > 0.0) h -= pm[m] * std::log2(pm[m]);
  return h;
}

double signed_correlator(const BehaviorF& b, const std::vector<int>& steps,
                         const std::vector<std::optional<int>>& inputs) {
  const Scenario& sc = b.scenario;
  if (static_cast<int>(inputs.size()) != sc.num_steps())
    throw std::invalid_argument("one (possibly unset) input per step expected");
  for (int st : steps)
    if (sc.steps()[static_cast<size_t>(st)].outputs != 2)
      throw std::invalid_argument("signed correlators need binary outcomes");

  std::vector<int> free_radices;
  std::vector<int> free_pos;
  for (int i = 0; i < sc.num_steps(); ++i)
    if (!inputs[static_cast<size_t>(i)]) {
      free_radices.push_back(sc.steps()[static_cast<size_t>(i)].inputs);
      free_pos.push_back(i);
    }
  double total = 0.0;
  Index n_free = 1;
  for (int r : free_radices) n_free *= r;

  std::vector<int> in(static_cast<size_t>(sc.num_steps())), out;
  for_each_tuple(free_radices.empty() ? std::vector<int>{1} : free_radices,
                 [&](const std::vector<int>& f) {
                   for (int i = 0; i < sc.num_steps(); ++i)
                     if (inputs[static_cast<size_t>(i)])
                       in[static_cast<size_t>(i)] = *inputs[static_cast<size_t>(i)];
                   for (size_t k = 0; k < free_pos.size(); ++k)
                     in[static_cast<size_t>(free_pos[k])] = f[k];
                   Index ctx = sc.input_index(in);
                   for (Index t = 0; t < sc.output_tuples(); ++t) {
                     sc.output_coordinates(t, out);
                     int parity = 0;
                     for (int st : steps) parity += out[static_cast<size_t>(st)];
                     double sign = parity % 2 == 0 ? 1.0 : -1.0;
                     total += sign * b.values[ctx * sc.output_tuples() + t];
                   }
                 });
  return total / static_cast<double>(n_free);
}

double ab_correlator(const BehaviorF& b, int x, int y) {
  std::vector<std::optional<int>> in(static_cast<size_t>(b.scenario.num_steps()));
  in[0] = x;
  in[1] = y;
  return signed_correlator(b, {0, 1}, in);
}

double bc_correlator(const BehaviorF& b, int x, int y, int z) {
  return signed_correlator(b, {1, 2}, {x, y, z});
}

double abc_correlator(const BehaviorF& b, int x, int y, int z) {
  return signed_correlator(b, {0, 1, 2}, {x, y, z});
}

double a_mean(const BehaviorF& b, int x) {
  std::vector<std::optional<int>> in(static_cast<size_t>(b.scenario.num_steps()));
  in[0] = x;
  return signed_correlator(b, {0}, in);
}

double b_mean(const BehaviorF& b, int x, int y) {
  std::vector<std::optional<int>> in(static_cast<size_t>(b.scenario.num_steps()));
  in[0] = x;
  in[1] = y;
  return signed_correlator(b, {1}, in);
}

} // namespace ctc
