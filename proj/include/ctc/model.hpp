#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ctc/basis.hpp"
#include "ctc/scenario.hpp"

namespace ctc {

enum class ModelKind { Lhv, OneWayMessage, TemporalFull, TemporalWeak };

std::string to_string(ModelKind k);
ModelKind model_kind_from_string(const std::string& s);

/// A classical causal model: a rule generating deterministic-strategy
/// vertices over a scenario.
struct CausalModel {
  ModelKind kind = ModelKind::Lhv;
  Scenario scenario;
  int message_dim = 0; // OneWayMessage only

  CausalModel() = default;
  CausalModel(ModelKind kind, Scenario scenario, int message_dim = 0);

  friend bool operator==(const CausalModel&, const CausalModel&) = default;
};

struct EnumerationOptions {
  std::uint64_t raw_strategy_cap = 10'000'000;
  int threads = 0; // 0 = hardware concurrency
};

/// Deduplicated, canonically sorted deterministic-strategy points.
struct VertexSet {
  CausalModel model;
  Basis basis;
  RatMat points; // one vertex per row

  Index count() const { return points.rows(); }
  Index dim() const { return points.cols(); }
};

/// Enumerates all deterministic response-function strategies of the model,
/// evaluates each to a 0/1 behavior, deduplicates and sorts.
VertexSet enumerate_vertices(const CausalModel& model, const EnumerationOptions& opts = {});

/// Applies a correlator subspace to every vertex (exact); dedups and sorts.
VertexSet project(const VertexSet& vs, const Basis& basis);

/// The vertex row as a rational Behavior (probability basis only).
BehaviorR vertex_behavior(const VertexSet& vs, Index row);

} // namespace ctc
