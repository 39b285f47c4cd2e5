#include "ctc/scenario.hpp"

#include <algorithm>
#include <set>

#include "ctc/rational.hpp"

namespace ctc {

Scenario::Scenario(std::vector<Step> steps, std::vector<MessageEdge> messages)
    : steps_(std::move(steps)), messages_(std::move(messages)) {
  if (steps_.empty()) throw std::invalid_argument("scenario needs at least one step");
  for (const auto& st : steps_)
    if (st.inputs < 1 || st.outputs < 1)
      throw std::invalid_argument("step cardinalities must be >= 1");
  std::set<std::pair<int, int>> seen;
  for (const auto& e : messages_) {
    if (e.from < 0 || e.to >= num_steps() || e.from >= e.to)
      throw std::invalid_argument("message edges must point forward in time");
    if (e.dim < 1) throw std::invalid_argument("message cardinality must be >= 1");
    if (!seen.insert({e.from, e.to}).second)
      throw std::invalid_argument("at most one message channel per ordered step pair");
  }
}

Index Scenario::input_contexts() const {
  Index n = 1;
  for (const auto& st : steps_) n *= st.inputs;
  return n;
}

Index Scenario::output_tuples() const {
  Index n = 1;
  for (const auto& st : steps_) n *= st.outputs;
  return n;
}

Index Scenario::input_index(const std::vector<int>& inputs) const {
  if (static_cast<int>(inputs.size()) != num_steps())
    throw std::invalid_argument("input tuple arity mismatch");
  Index idx = 0;
  for (int i = 0; i < num_steps(); ++i) {
    if (inputs[i] < 0 || inputs[i] >= steps_[i].inputs)
      throw std::invalid_argument("input coordinate out of range");
    idx = idx * steps_[i].inputs + inputs[i];
  }
  return idx;
}

Index Scenario::output_index(const std::vector<int>& outputs) const {
  if (static_cast<int>(outputs.size()) != num_steps())
    throw std::invalid_argument("output tuple arity mismatch");
  Index idx = 0;
  for (int i = 0; i < num_steps(); ++i) {
    if (outputs[i] < 0 || outputs[i] >= steps_[i].outputs)
      throw std::invalid_argument("output coordinate out of range");
    idx = idx * steps_[i].outputs + outputs[i];
  }
  return idx;
}

Index Scenario::index(const std::vector<int>& inputs, const std::vector<int>& outputs) const {
  return input_index(inputs) * output_tuples() + output_index(outputs);
}

void Scenario::input_coordinates(Index ctx, std::vector<int>& inputs) const {
  inputs.assign(static_cast<size_t>(num_steps()), 0);
  for (int i = num_steps() - 1; i >= 0; --i) {
    inputs[static_cast<size_t>(i)] = static_cast<int>(ctx % steps_[static_cast<size_t>(i)].inputs);
    ctx /= steps_[static_cast<size_t>(i)].inputs;
  }
}

void Scenario::output_coordinates(Index tup, std::vector<int>& outputs) const {
  outputs.assign(static_cast<size_t>(num_steps()), 0);
  for (int i = num_steps() - 1; i >= 0; --i) {
    outputs[static_cast<size_t>(i)] = static_cast<int>(tup % steps_[static_cast<size_t>(i)].outputs);
    tup /= steps_[static_cast<size_t>(i)].outputs;
  }
}

void Scenario::coordinates(Index idx, std::vector<int>& inputs, std::vector<int>& outputs) const {
  output_coordinates(idx % output_tuples(), outputs);
  input_coordinates(idx / output_tuples(), inputs);
}

Index behavior_index(const Scenario& s, const std::vector<int>& inputs,
                     const std::vector<int>& outputs) {
  return s.index(inputs, outputs);
}

void for_each_tuple(const std::vector<int>& radices,
                    const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(radices.size(), 0);
  while (true) {
    fn(t);
    int pos = static_cast<int>(radices.size()) - 1;
    while (pos >= 0) {
      if (++t[static_cast<size_t>(pos)] < radices[static_cast<size_t>(pos)]) break;
      t[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

std::vector<int> input_cardinalities(const Scenario& s) {
  std::vector<int> r;
  for (const auto& st : s.steps()) r.push_back(st.inputs);
  return r;
}

std::vector<int> output_cardinalities(const Scenario& s) {
  std::vector<int> r;
  for (const auto& st : s.steps()) r.push_back(st.outputs);
  return r;
}

BehaviorF to_float(const BehaviorR& b) {
  BehaviorF out{b.scenario, Vec(b.values.size())};
  for (Index i = 0; i < b.values.size(); ++i) out.values[i] = to_double(b.values[i]);
  return out;
}

BehaviorR rationalize(const BehaviorF& b, double eps) {
  BehaviorR out{b.scenario, RatVec(b.values.size())};
  for (Index i = 0; i < b.values.size(); ++i) out.values[i] = rationalize(b.values[i], eps);
  return out;
}

ValidationReport validate_behavior(const BehaviorF& b, double tol) {
  ValidationReport rep;
  const Index len = b.scenario.behavior_length();
  if (b.values.size() != len) {
    rep.valid = false;
    rep.message = "length mismatch: expected " + std::to_string(len) + ", got " +
                  std::to_string(b.values.size());
    throw std::invalid_argument(rep.message);
  }
  const Index nout = b.scenario.output_tuples();
  for (Index i = 0; i < len; ++i)
    if (b.values[i] < rep.worst_negative) rep.worst_negative = b.values[i];
  if (rep.worst_negative < -tol) rep.nonnegative = false;
  for (Index ctx = 0; ctx < b.scenario.input_contexts(); ++ctx) {
    double sum = b.values.segment(ctx * nout, nout).sum();
    rep.worst_norm_offset = std::max(rep.worst_norm_offset, std::fabs(sum - 1.0));
  }
  if (rep.worst_norm_offset > tol) rep.normalized = false;
  rep.valid = rep.nonnegative && rep.normalized;
  if (!rep.nonnegative) rep.message += "nonnegativity violated; ";
  if (!rep.normalized) rep.message += "normalization violated; ";
  return rep;
}

ValidationReport validate_behavior(const BehaviorR& b) {
  ValidationReport rep;
  const Index len = b.scenario.behavior_length();
  if (b.values.size() != len) throw std::invalid_argument("length mismatch");
  const Index nout = b.scenario.output_tuples();
  Rational worst_neg = 0, worst_off = 0;
  for (Index i = 0; i < len; ++i)
    if (b.values[i] < worst_neg) worst_neg = b.values[i];
  if (worst_neg < 0) rep.nonnegative = false;
  for (Index ctx = 0; ctx < b.scenario.input_contexts(); ++ctx) {
    Rational sum = 0;
    for (Index j = 0; j < nout; ++j) sum += b.values[ctx * nout + j];
    Rational off = abs(sum - 1);
    if (off > worst_off) worst_off = off;
  }
  if (worst_off != 0) rep.normalized = false;
  rep.worst_negative = to_double(worst_neg);
  rep.worst_norm_offset = to_double(worst_off);
  rep.valid = rep.nonnegative && rep.normalized;
  if (!rep.nonnegative) rep.message += "nonnegativity violated; ";
  if (!rep.normalized) rep.message += "normalization violated; ";
  return rep;
}

template <typename Scalar>
Behavior<Scalar> mix_white_noise(const Behavior<Scalar>& b, Scalar visibility) {
  if (visibility < Scalar(0) || visibility > Scalar(1))
    throw std::invalid_argument("visibility must lie in [0, 1]");
  Behavior<Scalar> out = b;
  const Scalar u = (Scalar(1) - visibility) / Scalar(b.scenario.output_tuples());
  for (Index i = 0; i < out.values.size(); ++i)
    out.values[i] = visibility * b.values[i] + u;
  return out;
}

template Behavior<double> mix_white_noise(const Behavior<double>&, double);
template Behavior<Rational> mix_white_noise(const Behavior<Rational>&, Rational);

} // namespace ctc
