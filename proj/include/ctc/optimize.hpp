#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ctc/inequality.hpp"
#include "ctc/protocols.hpp"
#include "ctc/quantum.hpp"

namespace ctc {

/// Sequence of projective measurements on one qubit; initial state free
/// (optimized over the Bloch ball) unless fixed.
struct SequentialQubitClass {
  Scenario scenario;
  std::optional<QState> fixed_initial;
};

/// Local measurements on a two-qubit pure state plus a classical message from
/// Alice to Bob. The state is a free Schmidt-form pure state unless fixed.
struct BipartitePlusMessageClass {
  Scenario scenario; // two steps, binary outcomes, one message edge
  int message_dim = 2;
  std::optional<QState> fixed_state;
};

struct BipartiteNoCommClass {
  Scenario scenario; // two steps, binary outcomes
  std::optional<QState> fixed_state;
};

using StrategyClass =
    std::variant<SequentialQubitClass, BipartitePlusMessageClass, BipartiteNoCommClass>;

struct OptimizerConfig {
  int restarts = 100;
  std::uint64_t seed = 0;
  double convergence_tol = 1e-12;
  int max_sweeps = 10'000;
  int threads = 0;
};

struct SeesawParams {
  // observables[step][setting] for sequential classes;
  // observables[0][x] = Alice, observables[1][y * message_dim + m] = Bob
  // for the bipartite classes
  std::vector<std::vector<Vec3>> observables;
  Vec3 initial_bloch = Vec3::Zero(); // sequential
  double schmidt_angle = 0.0;        // bipartite free state
  std::vector<std::vector<int>> message;
};

struct SeesawResult {
  double best_value = 0.0;
  int best_restart = -1;
  int restarts_used = 0;
  SeesawParams params;
  std::vector<double> trace; // objective after each sweep of the best restart
  double pipeline_value = 0.0; // same optimum re-evaluated through the
                               // quantum behavior pipeline
  BehaviorF behavior;          // behavior of the best parameters
};

/// Alternating maximization with exact per-slot updates (each conditional
/// subproblem solved in closed form on the unit sphere), seeded random
/// restarts, deterministic for a given seed and any thread count.
SeesawResult seesaw_maximize(const Inequality& ineq, const Basis& basis, const Scenario& scenario,
                             const StrategyClass& cls, const OptimizerConfig& cfg = {});

SeesawResult seesaw_maximize(const NamedInequality& ineq, const StrategyClass& cls,
                             const OptimizerConfig& cfg = {});

struct ScanEntry {
  std::size_t index = 0;
  double bound = 0.0;
  double best_value = 0.0;
  double excess = 0.0;
  bool flagged = false;
  int restarts_used = 0;
  std::uint64_t seed = 0;
};

struct ScanReport {
  std::vector<ScanEntry> entries;
  int flags = 0;
  double worst_excess = 0.0;
};

/// seesaw_maximize per inequality, flagging any best value that exceeds the
/// bound by more than excess_tol.
ScanReport scan_no_violation(const std::vector<Inequality>& inequalities, const Basis& basis,
                             const Scenario& scenario, const StrategyClass& cls,
                             const OptimizerConfig& cfg = {}, double excess_tol = 1e-6);

} // namespace ctc
