#include "ctc/optimize.hpp"

#include <cmath>
#include <limits>

#include <unsupported/Eigen/KroneckerProduct>

#include "ctc/errors.hpp"
#include "ctc/parallel.hpp"
#include "ctc/rng.hpp"
#include "ctc/spheremax.hpp"

namespace ctc {

namespace {

constexpr double kGolden = 0.6180339887498949; // 1/phi

// Probability-space coefficient tensor of an inequality in any basis.
Mat coefficient_table(const Inequality& ineq, const Basis& basis, const Scenario& sc) {
  const Index len = sc.behavior_length();
  Vec c = Vec::Zero(len);
  if (basis.is_probability()) {
    if (ineq.coeffs.size() != len) throw std::invalid_argument("inequality/scenario mismatch");
    for (Index i = 0; i < len; ++i) c[i] = to_double(ineq.coeffs[i]);
  } else {
    if (basis.functionals.cols() != len || ineq.coeffs.size() != basis.functionals.rows())
      throw std::invalid_argument("inequality/scenario mismatch");
    for (Index k = 0; k < basis.functionals.rows(); ++k) {
      if (ineq.coeffs[k] == 0) continue;
      const double ck = to_double(ineq.coeffs[k]);
      for (Index j = 0; j < len; ++j)
        if (basis.functionals(k, j) != 0) c[j] += ck * to_double(basis.functionals(k, j));
    }
  }
  const Index nout = sc.output_tuples();
  Mat table(sc.input_contexts(), nout);
  for (Index ctx = 0; ctx < sc.input_contexts(); ++ctx)
    for (Index t = 0; t < nout; ++t) table(ctx, t) = c[ctx * nout + t];
  return table;
}

double algebraic_cap(const Inequality& ineq) {
  double s = 0.0;
  for (Index i = 0; i < ineq.coeffs.size(); ++i) s += std::fabs(to_double(ineq.coeffs[i]));
  return s;
}

int sign_of(int outcome) { return outcome == 0 ? 1 : -1; }

// ---------------------------------------------------------------------------
// Sequential chain of projective qubit measurements.

struct SequentialState {
  Vec3 r = Vec3::Zero();
  bool r_free = true;
  std::vector<std::vector<Vec3>> obs; // per step, per setting
};

class SequentialObjective {
public:
  SequentialObjective(const Mat& table, const Scenario& sc) : table_(table), sc_(sc) {
    n_ = sc.num_steps();
  }

  double value(const SequentialState& st) const {
    double total = 0.0;
    std::vector<int> in, out;
    for (Index ctx = 0; ctx < sc_.input_contexts(); ++ctx) {
      sc_.input_coordinates(ctx, in);
      for (Index t = 0; t < sc_.output_tuples(); ++t) {
        const double c = table_(ctx, t);
        if (c == 0.0) continue;
        sc_.output_coordinates(t, out);
        total += c * chain_product(st, in, out, -1);
      }
    }
    return total;
  }

  // Update the observable of `step`, setting `s`: the objective restricted to
  // that Bloch vector is v.u + v'Qv (quadratic only for steps with a
  // successor).
  void update_observable(SequentialState& st, int step, int s) const {
    Mat3 Q = Mat3::Zero();
    Vec3 u = Vec3::Zero();
    std::vector<int> in, out;
    for (Index ctx = 0; ctx < sc_.input_contexts(); ++ctx) {
      sc_.input_coordinates(ctx, in);
      if (in[static_cast<size_t>(step)] != s) continue;
      for (Index t = 0; t < sc_.output_tuples(); ++t) {
        const double c = table_(ctx, t);
        if (c == 0.0) continue;
        sc_.output_coordinates(t, out);
        const double w = c * chain_product(st, in, out, step);
        const Vec3 pv = step == 0 ? st.r
                                  : st.obs[static_cast<size_t>(step - 1)]
                                        [static_cast<size_t>(in[static_cast<size_t>(step - 1)])];
        const int s1 = (step == 0 ? sign_of(out[0])
                                  : sign_of(out[static_cast<size_t>(step - 1)]) *
                                        sign_of(out[static_cast<size_t>(step)]));
        if (step + 1 < n_) {
          const Vec3 nv = st.obs[static_cast<size_t>(step + 1)]
                                [static_cast<size_t>(in[static_cast<size_t>(step + 1)])];
          const int s2 = sign_of(out[static_cast<size_t>(step)]) *
                         sign_of(out[static_cast<size_t>(step + 1)]);
          u += (0.25 * w) * (s1 * pv + s2 * nv);
          Q += (0.125 * w * s1 * s2) * (pv * nv.transpose() + nv * pv.transpose());
        } else {
          u += (0.5 * w * s1) * pv;
        }
      }
    }
    st.obs[static_cast<size_t>(step)][static_cast<size_t>(s)] =
        sphere_max(Q, u, st.obs[static_cast<size_t>(step)][static_cast<size_t>(s)]);
  }

  void update_initial(SequentialState& st) const {
    if (!st.r_free) return;
    Vec3 u = Vec3::Zero();
    std::vector<int> in, out;
    for (Index ctx = 0; ctx < sc_.input_contexts(); ++ctx) {
      sc_.input_coordinates(ctx, in);
      for (Index t = 0; t < sc_.output_tuples(); ++t) {
        const double c = table_(ctx, t);
        if (c == 0.0) continue;
        sc_.output_coordinates(t, out);
        const double w = c * chain_product(st, in, out, 0);
        u += (0.5 * w * sign_of(out[0])) * st.obs[0][static_cast<size_t>(in[0])];
      }
    }
    const double norm = u.norm();
    if (norm > 1e-300) st.r = u / norm; // linear objective peaks at a pure state
  }

private:
  // Product of the chain factors, excluding those that touch the observable
  // at `skip_step` (and its successor factor); skip_step = -1 keeps all.
  double chain_product(const SequentialState& st, const std::vector<int>& in,
                       const std::vector<int>& out, int skip_step) const {
    double prod = 1.0;
    for (int i = 0; i < n_; ++i) {
      if (i == skip_step || i == skip_step + 1) continue;
      const Vec3& cur = st.obs[static_cast<size_t>(i)][static_cast<size_t>(in[static_cast<size_t>(i)])];
      double dot;
      int sgn;
      if (i == 0) {
        dot = st.r.dot(cur);
        sgn = sign_of(out[0]);
      } else {
        const Vec3& prev =
            st.obs[static_cast<size_t>(i - 1)][static_cast<size_t>(in[static_cast<size_t>(i - 1)])];
        dot = prev.dot(cur);
        sgn = sign_of(out[static_cast<size_t>(i - 1)]) * sign_of(out[static_cast<size_t>(i)]);
      }
      prod *= 0.5 * (1.0 + sgn * dot);
    }
    return prod;
  }

  const Mat& table_;
  const Scenario& sc_;
  int n_ = 0;
};

// ---------------------------------------------------------------------------
// Bipartite two-qubit strategies, optionally with a message.

struct BipartiteState {
  Vec3 sA = Vec3::Zero();
  Vec3 sB = Vec3::Zero();
  Mat3 T = Mat3::Zero();
  double alpha = 3.14159265358979323846 / 4; // Schmidt angle
  bool state_free = true;
  std::vector<Vec3> alice;            // per x
  std::vector<std::vector<Vec3>> bob; // per y, per m
  std::vector<std::vector<int>> msg;  // per x, per a
};

void schmidt_state_data(double alpha, Vec3& sA, Vec3& sB, Mat3& T) {
  const double c2 = std::cos(2 * alpha), s2 = std::sin(2 * alpha);
  sA = {0, 0, c2};
  sB = {0, 0, c2};
  T = Vec3(s2, -s2, 1.0).asDiagonal();
}

void state_data_from(const QState& st, Vec3& sA, Vec3& sB, Mat3& T) {
  Mat2 sig[3];
  sig[0] << 0, 1, 1, 0;
  sig[1] << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
  sig[2] << 1, 0, 0, -1;
  for (int i = 0; i < 3; ++i) {
    sA[i] = (Eigen::kroneckerProduct(sig[i], Mat2::Identity()) * st.rho).trace().real();
    sB[i] = (Eigen::kroneckerProduct(Mat2::Identity(), sig[i]) * st.rho).trace().real();
    for (int j = 0; j < 3; ++j)
      T(i, j) = (Eigen::kroneckerProduct(sig[i], sig[j]) * st.rho).trace().real();
  }
}

class BipartiteObjective {
public:
  BipartiteObjective(const Mat& table, const Scenario& sc, int message_dim)
      : table_(table), mdim_(message_dim) {
    nx_ = sc.steps()[0].inputs;
    ny_ = sc.steps()[1].inputs;
  }

  double value(const BipartiteState& st) const {
    double total = 0.0;
    for (int x = 0; x < nx_; ++x)
      for (int a = 0; a < 2; ++a) {
        const int m = st.msg[static_cast<size_t>(x)][static_cast<size_t>(a)];
        for (int y = 0; y < ny_; ++y)
          for (int b = 0; b < 2; ++b)
            total += coef(x, y, a, b) * prob(st, x, y, a, b, m);
      }
    return total;
  }

  void update_alice(BipartiteState& st, int x) const {
    Vec3 u = Vec3::Zero();
    for (int a = 0; a < 2; ++a) {
      const int m = st.msg[static_cast<size_t>(x)][static_cast<size_t>(a)];
      for (int y = 0; y < ny_; ++y)
        for (int b = 0; b < 2; ++b) {
          const double c = coef(x, y, a, b);
          if (c == 0.0) continue;
          const Vec3& bv = st.bob[static_cast<size_t>(y)][static_cast<size_t>(m)];
          u += (0.25 * c) * (sign_of(a) * st.sA + sign_of(a) * sign_of(b) * (st.T * bv));
        }
    }
    const double n = u.norm();
    if (n > 1e-300) st.alice[static_cast<size_t>(x)] = u / n;
  }

  void update_bob(BipartiteState& st, int y, int m) const {
    Vec3 u = Vec3::Zero();
    for (int x = 0; x < nx_; ++x)
      for (int a = 0; a < 2; ++a) {
        if (st.msg[static_cast<size_t>(x)][static_cast<size_t>(a)] != m) continue;
        for (int b = 0; b < 2; ++b) {
          const double c = coef(x, y, a, b);
          if (c == 0.0) continue;
          u += (0.25 * c) * (sign_of(b) * st.sB +
                             sign_of(a) * sign_of(b) * (st.T.transpose() * st.alice[static_cast<size_t>(x)]));
        }
      }
    const double n = u.norm();
    if (n > 1e-300) st.bob[static_cast<size_t>(y)][static_cast<size_t>(m)] = u / n;
  }

  void update_message(BipartiteState& st, int x, int a) const {
    if (mdim_ < 2) return;
    double best = -std::numeric_limits<double>::infinity();
    int best_m = st.msg[static_cast<size_t>(x)][static_cast<size_t>(a)];
    for (int m = 0; m < mdim_; ++m) {
      double v = 0.0;
      for (int y = 0; y < ny_; ++y)
        for (int b = 0; b < 2; ++b) {
          const double c = coef(x, y, a, b);
          if (c == 0.0) continue;
          v += c * prob(st, x, y, a, b, m);
        }
      if (v > best + 1e-15) {
        best = v;
        best_m = m;
      }
    }
    st.msg[static_cast<size_t>(x)][static_cast<size_t>(a)] = best_m;
  }

  void update_state(BipartiteState& st) const {
    if (!st.state_free) return;
    // golden-section over the Schmidt angle; keeps the old point if better
    auto eval_at = [&](double alpha) {
      BipartiteState tmp = st;
      tmp.alpha = alpha;
      schmidt_state_data(alpha, tmp.sA, tmp.sB, tmp.T);
      return value(tmp);
    };
    double lo = 0.0, hi = 3.14159265358979323846 / 2;
    double x1 = hi - kGolden * (hi - lo), x2 = lo + kGolden * (hi - lo);
    double f1 = eval_at(x1), f2 = eval_at(x2);
    for (int it = 0; it < 120 && hi - lo > 1e-13; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + kGolden * (hi - lo);
        f2 = eval_at(x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - kGolden * (hi - lo);
        f1 = eval_at(x1);
      }
    }
    const double cand = 0.5 * (lo + hi);
    if (eval_at(cand) >= value(st)) {
      st.alpha = cand;
      schmidt_state_data(cand, st.sA, st.sB, st.T);
    }
  }

private:
  double coef(int x, int y, int a, int b) const {
    return table_(static_cast<Index>(x) * ny_ + y, static_cast<Index>(a) * 2 + b);
  }
  double prob(const BipartiteState& st, int x, int y, int a, int b, int m) const {
    const Vec3& av = st.alice[static_cast<size_t>(x)];
    const Vec3& bv = st.bob[static_cast<size_t>(y)][static_cast<size_t>(m)];
    return 0.25 * (1.0 + sign_of(a) * av.dot(st.sA) + sign_of(b) * bv.dot(st.sB) +
                   sign_of(a) * sign_of(b) * av.dot(st.T * bv));
  }

  const Mat& table_;
  int nx_ = 0, ny_ = 0, mdim_ = 1;
};

// ---------------------------------------------------------------------------

struct RestartOutcome {
  double value = -std::numeric_limits<double>::infinity();
  SeesawParams params;
  std::vector<double> trace;
  int sweeps = 0;
};

void check_monotone(double before, double after) {
  const double slack = 1e-9 * (1.0 + std::fabs(before));
  if (after < before - slack)
    throw NumericalFailure("see-saw objective decreased within a sweep");
}

RestartOutcome run_sequential_restart(const SequentialObjective& obj, const Scenario& sc,
                                      const std::optional<QState>& fixed_initial, RngStream rng,
                                      const OptimizerConfig& cfg, bool record_trace) {
  SequentialState st;
  st.obs.resize(static_cast<size_t>(sc.num_steps()));
  for (int i = 0; i < sc.num_steps(); ++i) {
    st.obs[static_cast<size_t>(i)].resize(static_cast<size_t>(sc.steps()[static_cast<size_t>(i)].inputs));
    for (auto& v : st.obs[static_cast<size_t>(i)]) v = rng.unit_vector();
  }
  if (fixed_initial) {
    st.r_free = false;
    // Bloch vector of the fixed initial state
    Mat2 sig[3];
    sig[0] << 0, 1, 1, 0;
    sig[1] << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
    sig[2] << 1, 0, 0, -1;
    for (int i = 0; i < 3; ++i) st.r[i] = (sig[i] * fixed_initial->rho).trace().real();
  } else {
    st.r = rng.unit_vector() * rng.uniform();
  }

  double prev = obj.value(st);
  RestartOutcome out;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    double before = prev;
    obj.update_initial(st);
    for (int step = 0; step < sc.num_steps(); ++step)
      for (int s = 0; s < sc.steps()[static_cast<size_t>(step)].inputs; ++s)
        obj.update_observable(st, step, s);
    double cur = obj.value(st);
    check_monotone(before, cur);
    if (record_trace) out.trace.push_back(cur);
    out.sweeps = sweep + 1;
    if (cur - before < cfg.convergence_tol) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  out.value = prev;
  out.params.observables = st.obs;
  out.params.initial_bloch = st.r;
  return out;
}

RestartOutcome run_bipartite_restart(const BipartiteObjective& obj, const Scenario& sc,
                                     int message_dim, const std::optional<QState>& fixed_state,
                                     RngStream rng, const OptimizerConfig& cfg,
                                     bool record_trace) {
  const int nx = sc.steps()[0].inputs, ny = sc.steps()[1].inputs;
  BipartiteState st;
  st.alice.resize(static_cast<size_t>(nx));
  for (auto& v : st.alice) v = rng.unit_vector();
  st.bob.assign(static_cast<size_t>(ny), std::vector<Vec3>(static_cast<size_t>(message_dim)));
  for (auto& row : st.bob)
    for (auto& v : row) v = rng.unit_vector();
  st.msg.assign(static_cast<size_t>(nx), std::vector<int>(2, 0));
  for (auto& row : st.msg)
    for (auto& m : row) m = message_dim > 1 ? rng.uniform_int(message_dim) : 0;
  if (fixed_state) {
    st.state_free = false;
    state_data_from(*fixed_state, st.sA, st.sB, st.T);
  } else {
    st.alpha = rng.uniform(0.0, 3.14159265358979323846 / 2);
    schmidt_state_data(st.alpha, st.sA, st.sB, st.T);
  }

  double prev = obj.value(st);
  RestartOutcome out;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    double before = prev;
    obj.update_state(st);
    for (int x = 0; x < nx; ++x) obj.update_alice(st, x);
    for (int y = 0; y < ny; ++y)
      for (int m = 0; m < message_dim; ++m) obj.update_bob(st, y, m);
    for (int x = 0; x < nx; ++x)
      for (int a = 0; a < 2; ++a) obj.update_message(st, x, a);
    double cur = obj.value(st);
    check_monotone(before, cur);
    if (record_trace) out.trace.push_back(cur);
    out.sweeps = sweep + 1;
    if (cur - before < cfg.convergence_tol) {
      prev = cur;
      break;
    }
    prev = cur;
  }
  out.value = prev;
  out.params.observables = {std::vector<Vec3>(), std::vector<Vec3>()};
  out.params.observables[0] = st.alice;
  out.params.observables[1].resize(static_cast<size_t>(ny) * message_dim);
  for (int y = 0; y < ny; ++y)
    for (int m = 0; m < message_dim; ++m)
      out.params.observables[1][static_cast<size_t>(y * message_dim + m)] =
          st.bob[static_cast<size_t>(y)][static_cast<size_t>(m)];
  out.params.schmidt_angle = st.alpha;
  out.params.message = st.msg;
  return out;
}

BehaviorF behavior_of(const SeesawParams& p, const StrategyClass& cls) {
  if (std::holds_alternative<SequentialQubitClass>(cls)) {
    const auto& c = std::get<SequentialQubitClass>(cls);
    QState init = c.fixed_initial ? *c.fixed_initial : QState::from_bloch(p.initial_bloch);
    std::vector<std::vector<Observable>> settings;
    for (const auto& step : p.observables) {
      settings.emplace_back();
      for (const auto& v : step) settings.back().push_back(observable_from_bloch(v));
    }
    return sequential_behavior(init, settings);
  }
  const bool with_msg = std::holds_alternative<BipartitePlusMessageClass>(cls);
  const Scenario& sc = with_msg ? std::get<BipartitePlusMessageClass>(cls).scenario
                                : std::get<BipartiteNoCommClass>(cls).scenario;
  const int mdim = with_msg ? std::get<BipartitePlusMessageClass>(cls).message_dim : 1;
  const std::optional<QState>& fixed = with_msg
                                           ? std::get<BipartitePlusMessageClass>(cls).fixed_state
                                           : std::get<BipartiteNoCommClass>(cls).fixed_state;
  QState state = [&] {
    if (fixed) return *fixed;
    CxVec amp = CxVec::Zero(4);
    amp[0] = std::cos(p.schmidt_angle);
    amp[3] = std::sin(p.schmidt_angle);
    return QState::pure(amp);
  }();
  const int ny = sc.steps()[1].inputs;
  CommProtocol proto;
  for (const auto& v : p.observables[0]) proto.alice.push_back(observable_from_bloch(v));
  proto.message = p.message;
  proto.bob.resize(static_cast<size_t>(ny));
  for (int y = 0; y < ny; ++y)
    for (int m = 0; m < mdim; ++m)
      proto.bob[static_cast<size_t>(y)].push_back(
          observable_from_bloch(p.observables[1][static_cast<size_t>(y * mdim + m)]));
  if (with_msg) return comm_augmented_behavior(state, proto);
  std::vector<Observable> bob_plain;
  for (int y = 0; y < ny; ++y) bob_plain.push_back(proto.bob[static_cast<size_t>(y)][0]);
  return bipartite_behavior(state, proto.alice, bob_plain);
}

} // namespace

SeesawResult seesaw_maximize(const Inequality& ineq, const Basis& basis, const Scenario& scenario,
                             const StrategyClass& cls, const OptimizerConfig& cfg) {
  for (const auto& st : scenario.steps())
    if (st.outputs != 2)
      throw std::invalid_argument("see-saw strategies cover binary outcomes only");
  const Mat table = coefficient_table(ineq, basis, scenario);

  const bool is_seq = std::holds_alternative<SequentialQubitClass>(cls);
  const bool with_msg = std::holds_alternative<BipartitePlusMessageClass>(cls);
  if (!is_seq && scenario.num_steps() != 2)
    throw std::invalid_argument("bipartite classes need a two-step scenario");
  if (is_seq) {
    const auto& c = std::get<SequentialQubitClass>(cls);
    if (!(c.scenario.steps() == scenario.steps()))
      throw std::invalid_argument("strategy class scenario does not match the inequality");
  }

  SequentialObjective seq_obj(table, scenario);
  const int mdim = with_msg ? std::get<BipartitePlusMessageClass>(cls).message_dim : 1;
  BipartiteObjective bip_obj(table, scenario, mdim);

  auto run_restart = [&](std::uint64_t index, bool record_trace) {
    RngStream rng = RngStream::keyed(cfg.seed, index);
    if (is_seq)
      return run_sequential_restart(seq_obj, scenario,
                                    std::get<SequentialQubitClass>(cls).fixed_initial, rng, cfg,
                                    record_trace);
    const std::optional<QState>& fixed = with_msg
                                             ? std::get<BipartitePlusMessageClass>(cls).fixed_state
                                             : std::get<BipartiteNoCommClass>(cls).fixed_state;
    return run_bipartite_restart(bip_obj, scenario, mdim, fixed, rng, cfg, record_trace);
  };

  std::vector<double> values(static_cast<size_t>(cfg.restarts),
                             -std::numeric_limits<double>::infinity());
  parallel_chunks(cfg.restarts, resolve_threads(cfg.threads), [&](int, Index lo, Index hi) {
    for (Index i = lo; i < hi; ++i)
      values[static_cast<size_t>(i)] = run_restart(static_cast<std::uint64_t>(i), false).value;
  });

  int best = 0;
  for (int i = 1; i < cfg.restarts; ++i)
    if (values[static_cast<size_t>(i)] > values[static_cast<size_t>(best)]) best = i;

  // deterministic re-run of the winning restart, now recording the trace
  RestartOutcome win = run_restart(static_cast<std::uint64_t>(best), true);

  SeesawResult res;
  res.best_value = win.value;
  res.best_restart = best;
  res.restarts_used = cfg.restarts;
  res.params = std::move(win.params);
  res.trace = std::move(win.trace);
  res.behavior = behavior_of(res.params, cls);
  res.pipeline_value = evaluate(ineq, project_behavior(res.behavior, basis));

  const double cap = algebraic_cap(ineq);
  if (res.best_value > cap + 1e-9)
    throw NumericalFailure("see-saw value exceeds the algebraic bound");
  return res;
}

SeesawResult seesaw_maximize(const NamedInequality& in, const StrategyClass& cls,
                             const OptimizerConfig& cfg) {
  return seesaw_maximize(in.ineq, in.basis, in.scenario, cls, cfg);
}

ScanReport scan_no_violation(const std::vector<Inequality>& inequalities, const Basis& basis,
                             const Scenario& scenario, const StrategyClass& cls,
                             const OptimizerConfig& cfg, double excess_tol) {
  ScanReport rep;
  rep.worst_excess = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < inequalities.size(); ++i) {
    OptimizerConfig sub = cfg;
    sub.seed = RngStream::keyed(cfg.seed, 0x5ca0ULL + i).next();
    SeesawResult r = seesaw_maximize(inequalities[i], basis, scenario, cls, sub);
    ScanEntry e;
    e.index = i;
    e.bound = to_double(inequalities[i].bound);
    e.best_value = r.best_value;
    e.excess = e.best_value - e.bound;
    e.flagged = e.excess > excess_tol;
    e.restarts_used = r.restarts_used;
    e.seed = sub.seed;
    rep.entries.push_back(e);
    if (e.flagged) ++rep.flags;
    rep.worst_excess = std::max(rep.worst_excess, e.excess);
  }
  return rep;
}

} // namespace ctc
