#include "ctc/independence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ctc/rational.hpp"

namespace ctc {

Var parse_var(const std::string& name, const Scenario& s) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  std::string n = name;
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return std::tolower(c); });
  static const std::string settings = "xyz", outcomes = "abc";
  VarKind kind;
  int step;
  if (n.size() == 1 || (n.size() > 1 && std::isdigit(static_cast<unsigned char>(n[1])))) {
    auto sp = settings.find(n[0]);
    auto op = outcomes.find(n[0]);
    if (sp != std::string::npos) {
      kind = VarKind::Setting;
      step = n.size() == 1 ? static_cast<int>(sp) : std::stoi(n.substr(1));
      // "x0","x1",... index steps directly; bare "x","y","z" are steps 0..2
      if (n.size() > 1 && n[0] != 'x') throw std::invalid_argument("use x<i> for indexed settings");
    } else if (op != std::string::npos) {
      kind = VarKind::Outcome;
      step = n.size() == 1 ? static_cast<int>(op) : std::stoi(n.substr(1));
      if (n.size() > 1 && n[0] != 'a') throw std::invalid_argument("use a<i> for indexed outcomes");
    } else {
      throw std::invalid_argument("unknown variable '" + name + "'");
    }
  } else {
    throw std::invalid_argument("unknown variable '" + name + "'");
  }
  if (step < 0 || step >= s.num_steps())
    throw std::invalid_argument("variable '" + name + "' names a step outside the scenario");
  return Var{kind, step};
}

std::string var_name(const Var& v) {
  return (v.kind == VarKind::Setting ? "x" : "a") + std::to_string(v.step);
}

namespace {

int var_cardinality(const Var& v, const Scenario& s) {
  const auto& st = s.steps()[static_cast<size_t>(v.step)];
  return v.kind == VarKind::Setting ? st.inputs : st.outputs;
}

long key_of(const std::vector<Var>& vars, const Scenario& s, const std::vector<int>& in,
            const std::vector<int>& out) {
  long key = 0;
  for (const auto& v : vars) {
    int val = v.kind == VarKind::Setting ? in[static_cast<size_t>(v.step)]
                                         : out[static_cast<size_t>(v.step)];
    key = key * var_cardinality(v, s) + val;
  }
  return key;
}

} // namespace

IndependenceResult check_independence(const BehaviorF& b, const IndependenceQuery& q,
                                      double tol) {
  const Scenario& s = b.scenario;
  auto check_disjoint = [&](const std::vector<Var>& u, const std::vector<Var>& v) {
    for (const auto& a : u)
      for (const auto& c : v)
        if (a == c) throw std::invalid_argument("independence query variable sets must be disjoint");
  };
  check_disjoint(q.left, q.right);
  check_disjoint(q.left, q.conditioning);
  check_disjoint(q.right, q.conditioning);
  if (q.left.empty() || q.right.empty())
    throw std::invalid_argument("independence query needs nonempty left and right sets");

  const Index nctx = s.input_contexts();
  Vec w = q.input_distribution;
  if (w.size() == 0) w = Vec::Constant(nctx, 1.0 / static_cast<double>(nctx));
  if (w.size() != nctx) throw std::invalid_argument("input distribution length mismatch");

  // joint accumulators keyed by (cond, left, right) value tuples
  std::map<long, double> p_c;
  std::map<std::pair<long, long>, double> p_lc, p_rc;
  std::map<std::tuple<long, long, long>, double> p_lrc;

  std::vector<int> in, out;
  const Index nout = s.output_tuples();
  for (Index ctx = 0; ctx < nctx; ++ctx) {
    if (w[ctx] == 0.0) continue;
    s.input_coordinates(ctx, in);
    for (Index t = 0; t < nout; ++t) {
      double p = w[ctx] * b.values[ctx * nout + t];
      if (p == 0.0) continue;
      s.output_coordinates(t, out);
      long kc = key_of(q.conditioning, s, in, out);
      long kl = key_of(q.left, s, in, out);
      long kr = key_of(q.right, s, in, out);
      p_c[kc] += p;
      p_lc[{kl, kc}] += p;
      p_rc[{kr, kc}] += p;
      p_lrc[{kl, kr, kc}] += p;
    }
  }

  IndependenceResult res;
  long n_cond_values = 1;
  for (const auto& v : q.conditioning) n_cond_values *= var_cardinality(v, s);
  res.skipped_conditioning_events = static_cast<int>(n_cond_values - static_cast<long>(p_c.size()));

  for (const auto& [kc, pc] : p_c) {
    if (pc <= 0.0) continue;
    for (const auto& [klc, plc] : p_lc) {
      if (klc.second != kc) continue;
      for (const auto& [krc, prc] : p_rc) {
        if (krc.second != kc) continue;
        auto it = p_lrc.find({klc.first, krc.first, kc});
        double plrc = it == p_lrc.end() ? 0.0 : it->second;
        double dev = std::fabs(plrc / pc - (plc / pc) * (prc / pc));
        res.max_deviation = std::max(res.max_deviation, dev);
      }
    }
  }
  res.holds = res.max_deviation <= tol;
  return res;
}

namespace {

template <typename Scalar>
std::vector<SignalingEntry> profile_impl(const Behavior<Scalar>& b, double tol) {
  const Scenario& s = b.scenario;
  const int n = s.num_steps();
  const Index nout = s.output_tuples();
  std::vector<SignalingEntry> entries;
  std::vector<int> in, out;

  auto tv_max = [&](int from, int to, bool prefix) {
    // distribution of either a_to alone or the joint (a_0..a_to)
    std::vector<int> radices;
    for (int j = 0; j <= (prefix ? to : to); ++j)
      if (prefix || j == to) radices.push_back(s.steps()[static_cast<size_t>(j)].outputs);
    Index nvals = 1;
    for (int r : radices) nvals *= r;

    auto dist_of = [&](const std::vector<int>& inputs) {
      std::vector<Scalar> d(static_cast<size_t>(nvals), Scalar(0));
      Index ctx = s.input_index(inputs);
      for (Index t = 0; t < nout; ++t) {
        s.output_coordinates(t, out);
        Index key = 0;
        if (prefix) {
          for (int j = 0; j <= to; ++j)
            key = key * s.steps()[static_cast<size_t>(j)].outputs + out[static_cast<size_t>(j)];
        } else {
          key = out[static_cast<size_t>(to)];
        }
        d[static_cast<size_t>(key)] += b.values[ctx * nout + t];
      }
      return d;
    };

    Scalar worst(0);
    // iterate over contexts of the other inputs, vary x_from over its values
    std::vector<int> others;
    for (int j = 0; j < n; ++j)
      if (j != from) others.push_back(s.steps()[static_cast<size_t>(j)].inputs);
    for_each_tuple(others, [&](const std::vector<int>& o) {
      std::vector<int> inputs(static_cast<size_t>(n));
      int k = 0;
      for (int j = 0; j < n; ++j)
        if (j != from) inputs[static_cast<size_t>(j)] = o[static_cast<size_t>(k++)];
      const int card = s.steps()[static_cast<size_t>(from)].inputs;
      std::vector<std::vector<Scalar>> dists;
      for (int v = 0; v < card; ++v) {
        inputs[static_cast<size_t>(from)] = v;
        dists.push_back(dist_of(inputs));
      }
      for (size_t i = 0; i + 1 < dists.size(); ++i)
        for (size_t j = i + 1; j < dists.size(); ++j) {
          Scalar tv(0);
          for (Index v = 0; v < nvals; ++v) {
            Scalar d = dists[i][static_cast<size_t>(v)] - dists[j][static_cast<size_t>(v)];
            tv += d < Scalar(0) ? -d : d;
          }
          tv /= Scalar(2);
          if (tv > worst) worst = tv;
        }
    });
    return worst;
  };

  for (int from = 0; from < n; ++from) {
    for (int to = 0; to < n; ++to) {
      if (from == to) continue;
      SignalingEntry e;
      e.from_step = from;
      e.to_step = to;
      e.retrocausal = from > to;
      Scalar mag = tv_max(from, to, /*prefix=*/e.retrocausal);
      if constexpr (std::is_same_v<Scalar, Rational>) {
        e.magnitude = to_double(mag);
        e.violated = mag != 0;
      } else {
        e.magnitude = mag;
        e.violated = mag > tol;
      }
      entries.push_back(e);
    }
  }
  return entries;
}

} // namespace

std::vector<SignalingEntry> signaling_profile(const BehaviorF& b, double tol) {
  return profile_impl<double>(b, tol);
}

std::vector<SignalingEntry> signaling_profile(const BehaviorR& b) {
  return profile_impl<Rational>(b, 0.0);
}

} // namespace ctc
