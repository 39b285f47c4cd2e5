#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ctc/scenario.hpp"

namespace ctc {

enum class VarKind { Setting, Outcome };

/// A setting or outcome variable of a scenario, e.g. {Setting, 0} is the
/// first measurement choice ("x" in a tripartite scenario).
struct Var {
  VarKind kind = VarKind::Setting;
  int step = 0;
  friend bool operator==(const Var&, const Var&) = default;
};

/// Parses "x","y","z","a","b","c" (three-step aliases) or "x0".."xN"/"a0".."aN".
Var parse_var(const std::string& name, const Scenario& s);
std::string var_name(const Var& v);

struct IndependenceQuery {
  std::vector<Var> left;
  std::vector<Var> right;
  std::vector<Var> conditioning;
  /// Distribution over input contexts (lex order); empty means uniform.
  Vec input_distribution;
};

struct IndependenceResult {
  bool holds = true;
  double max_deviation = 0.0;
  int skipped_conditioning_events = 0;
};

/// Tests max |p(l,r|cond) - p(l|cond) p(r|cond)| <= tol over all value
/// assignments, with settings distributed by the query's input distribution.
/// Conditioning events of probability zero are skipped and counted.
IndependenceResult check_independence(const BehaviorF& b, const IndependenceQuery& q,
                                      double tol = 1e-10);

struct SignalingEntry {
  int from_step = 0; // step whose *input* varies
  int to_step = 0;   // outcome (prefix) under test
  bool retrocausal = false;
  bool violated = false;
  double magnitude = 0.0; // max total-variation distance
};

/// For every ordered step pair, measures input-to-outcome dependence.
/// Forward entries (from < to): does p(a_to | inputs) change with x_from?
/// Retro entries (from > to): does the joint outcome prefix p(a_0..a_to | inputs)
/// change with the later input x_from (arrow-of-time violation)?
std::vector<SignalingEntry> signaling_profile(const BehaviorF& b, double tol = 1e-9);
std::vector<SignalingEntry> signaling_profile(const BehaviorR& b); // exact, tol = 0

} // namespace ctc
