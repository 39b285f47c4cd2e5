#pragma once

#include <functional>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ctc/types.hpp"

namespace ctc {

struct Step {
  int inputs = 1;
  int outputs = 1;
  friend bool operator==(const Step&, const Step&) = default;
};

struct MessageEdge {
  int from = 0;
  int to = 0;
  int dim = 1;
  friend bool operator==(const MessageEdge&, const MessageEdge&) = default;
};

/// Ordered measurement steps plus optional forward message channels.
/// Behaviors over a scenario are flat vectors p(outputs | inputs) indexed
/// inputs-outermost, earlier steps more significant.
class Scenario {
public:
  Scenario() = default;
  Scenario(std::vector<Step> steps, std::vector<MessageEdge> messages = {});

  const std::vector<Step>& steps() const { return steps_; }
  const std::vector<MessageEdge>& messages() const { return messages_; }
  int num_steps() const { return static_cast<int>(steps_.size()); }

  Index input_contexts() const;
  Index output_tuples() const;
  Index behavior_length() const { return input_contexts() * output_tuples(); }

  /// Lexicographic index, inputs outermost then outputs.
  Index index(const std::vector<int>& inputs, const std::vector<int>& outputs) const;

  /// Inverse of index().
  void coordinates(Index idx, std::vector<int>& inputs, std::vector<int>& outputs) const;

  Index input_index(const std::vector<int>& inputs) const;
  void input_coordinates(Index ctx, std::vector<int>& inputs) const;
  Index output_index(const std::vector<int>& outputs) const;
  void output_coordinates(Index tup, std::vector<int>& outputs) const;

  friend bool operator==(const Scenario&, const Scenario&) = default;

private:
  std::vector<Step> steps_;
  std::vector<MessageEdge> messages_;
};

inline Scenario make_scenario(std::vector<Step> steps, std::vector<MessageEdge> messages = {}) {
  return Scenario(std::move(steps), std::move(messages));
}

Index behavior_index(const Scenario& s, const std::vector<int>& inputs,
                     const std::vector<int>& outputs);

/// Odometer over mixed-radix tuples; calls fn for every tuple in lex order.
void for_each_tuple(const std::vector<int>& radices, const std::function<void(const std::vector<int>&)>& fn);

std::vector<int> input_cardinalities(const Scenario& s);
std::vector<int> output_cardinalities(const Scenario& s);

// ---------------------------------------------------------------------------

template <typename Scalar>
struct Behavior {
  Scenario scenario;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> values;

  Scalar operator()(const std::vector<int>& inputs, const std::vector<int>& outputs) const {
    return values[scenario.index(inputs, outputs)];
  }
};

using BehaviorF = Behavior<double>;
using BehaviorR = Behavior<Rational>;

template <typename Scalar>
Behavior<Scalar> uniform_behavior(const Scenario& s) {
  Behavior<Scalar> b{s, {}};
  b.values.setConstant(s.behavior_length(), Scalar(1) / Scalar(s.output_tuples()));
  return b;
}

BehaviorF to_float(const BehaviorR& b);
BehaviorR rationalize(const BehaviorF& b, double eps = 1e-12);

struct ValidationReport {
  bool valid = true;
  bool nonnegative = true;
  bool normalized = true;
  double worst_negative = 0.0;    // most negative entry (0 if none)
  double worst_norm_offset = 0.0; // max |context sum - 1|
  std::string message;
};

ValidationReport validate_behavior(const BehaviorF& b, double tol = 1e-9);
ValidationReport validate_behavior(const BehaviorR& b); // exact

/// v * p + (1 - v) * uniform, per input context.
template <typename Scalar>
Behavior<Scalar> mix_white_noise(const Behavior<Scalar>& b, Scalar visibility);

} // namespace ctc
