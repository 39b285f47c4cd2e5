#include "ctc/protocols.hpp"

#include <cmath>
#include <sstream>

namespace ctc {

namespace {

constexpr double kPi = 3.14159265358979323846;

Observable pauli_x() { return {kPi / 2, 0.0}; }
Observable pauli_z() { return {0.0, 0.0}; }
Observable minus_x() { return {kPi / 2, kPi}; }

Scenario s1bit_scenario() { return Scenario({{3, 2}, {3, 2}}, {{0, 1, 2}}); }
Scenario dimwitness_scenario() { return Scenario({{3, 2}, {2, 2}}, {{0, 1, 2}}); }
Scenario tau3_scenario() { return Scenario({{2, 2}, {2, 2}, {2, 2}}); }

Inequality make_ineq(const std::vector<long long>& coeffs, long long bound) {
  Inequality in;
  in.coeffs = RatVec::Zero(static_cast<Index>(coeffs.size()));
  for (size_t i = 0; i < coeffs.size(); ++i) in.coeffs[static_cast<Index>(i)] = Rational(coeffs[i]);
  in.bound = Rational(bound);
  return canonicalize(in);
}

} // namespace

InequalityId inequality_id_from_string(const std::string& s) {
  if (s == "S1bit") return InequalityId::S1bit;
  if (s == "Stau3") return InequalityId::Stau3;
  if (s == "DimWitness") return InequalityId::DimWitness;
  if (s == "CHSH_sub") return InequalityId::ChshSub;
  throw std::invalid_argument("unknown inequality id '" + s + "'");
}

std::string to_string(InequalityId id) {
  switch (id) {
    case InequalityId::S1bit: return "S1bit";
    case InequalityId::Stau3: return "Stau3";
    case InequalityId::DimWitness: return "DimWitness";
    case InequalityId::ChshSub: return "CHSH_sub";
  }
  throw std::logic_error("unreachable");
}

double NamedInequality::evaluate(const BehaviorF& behavior) const {
  if (!(behavior.scenario.steps() == scenario.steps()))
    throw std::invalid_argument("behavior scenario does not match the inequality");
  return ctc::evaluate(ineq, project_behavior(behavior, basis));
}

NamedInequality build_inequality(InequalityId id) {
  switch (id) {
    case InequalityId::S1bit: {
      Scenario sc = s1bit_scenario();
      Basis basis = ab_correlator_basis(sc);
      // (x,y) lex order 00,01,02,10,11,12,20,21,22
      Inequality in = make_ineq({1, 1, 1, 1, 1, -1, 1, -1, 0}, 6);
      return {id, "S1bit", sc, basis, in};
    }
    case InequalityId::Stau3: {
      Scenario sc = tau3_scenario();
      Basis basis = ab_bc_correlator_basis(sc);
      // 4 AB terms then 8 BC terms, (x,y,z) lex
      Inequality in =
          make_ineq({1, 1, 1, -1, 0, -1, -1, 0, 0, -1, -1, 0}, 6);
      return {id, "Stau3", sc, basis, in};
    }
    case InequalityId::DimWitness: {
      Scenario sc = dimwitness_scenario();
      Basis basis = b_marginal_basis(sc);
      Inequality in = make_ineq({1, 1, 1, -1, -1, 0}, 3);
      return {id, "DimWitness", sc, basis, in};
    }
    case InequalityId::ChshSub: {
      Scenario sc = s1bit_scenario();
      Basis basis = ab_correlator_basis(sc);
      Inequality in = make_ineq({0, 0, 0, 1, 1, 0, 1, -1, 0}, 2);
      return {id, "CHSH_sub", sc, basis, in};
    }
  }
  throw std::logic_error("unreachable");
}

BehaviorF NamedProtocol::behavior() const {
  if (id == ProtocolId::Tau3) return sequential_behavior(state, sequential_settings);
  return comm_augmented_behavior(state, comm);
}

NamedProtocol build_protocol(ProtocolId id, double kappa) {
  if (kappa < 0.0 || kappa > 1.0) throw std::invalid_argument("kappa must lie in [0, 1]");
  if (id == ProtocolId::Tau3) return build_tau3(QState::maximally_mixed(2));

  NamedProtocol p;
  p.id = id;
  p.kappa = kappa;
  p.state = family_state(kappa);
  p.comm.alice = {pauli_x(), pauli_x(), pauli_z()};
  p.comm.message = {{0, 0}, {1, 1}, {1, 1}}; // m = 0 iff x = 0
  const Observable b_m0 = pauli_x();
  if (id == ProtocolId::OneBitFixed) {
    p.name = "OneBitFixed";
    // m=1: B0 = (X+Z)/sqrt2, B1 = (X-Z)/sqrt2, B2 = -X
    p.comm.bob = {{b_m0, observable_from_bloch({1, 0, 1})},
                  {b_m0, observable_from_bloch({1, 0, -1})},
                  {b_m0, minus_x()}};
  } else {
    p.name = "OneBitOptimized";
    // m=1: B0 = (X+kZ)/sqrt(1+k^2), B1 = (X-kZ)/sqrt(1+k^2), B2 = -X
    p.comm.bob = {{b_m0, observable_from_bloch({1, 0, kappa})},
                  {b_m0, observable_from_bloch({1, 0, -kappa})},
                  {b_m0, minus_x()}};
  }
  return p;
}

NamedProtocol build_tau3(const QState& initial_qubit) {
  if (initial_qubit.dim() != 2) throw std::invalid_argument("Tau3 starts from a qubit state");
  NamedProtocol p;
  p.id = ProtocolId::Tau3;
  p.name = "Tau3";
  p.state = initial_qubit;
  const Observable b0 = observable_from_bloch({1, 0, 1});   // (Z+X)/sqrt2
  const Observable b1 = observable_from_bloch({-1, 0, 1});  // (Z-X)/sqrt2
  const Observable c0 = observable_from_bloch({1, 0, -1});  // -B1
  const Observable c1 = observable_from_bloch({-1, 0, -1}); // -B0
  p.sequential_settings = {{pauli_z(), pauli_x()}, {b0, b1}, {c0, c1}};
  return p;
}

ChshDecomposition chsh_decomposition(const BehaviorF& behavior) {
  NamedInequality s1bit = build_inequality(InequalityId::S1bit);
  NamedInequality chsh = build_inequality(InequalityId::ChshSub);
  ChshDecomposition d;
  d.s1bit = s1bit.evaluate(behavior);
  d.chsh = chsh.evaluate(behavior);
  d.residual = d.s1bit - 4.0 - d.chsh;
  return d;
}

std::vector<double> uniform_grid(int points) {
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
  std::vector<double> g(static_cast<size_t>(points));
  for (int i = 0; i < points; ++i) g[static_cast<size_t>(i)] = static_cast<double>(i) / (points - 1);
  return g;
}

std::vector<KappaSweepRow> kappa_sweep(const std::vector<double>& grid) {
  NamedInequality s1bit = build_inequality(InequalityId::S1bit);
  std::vector<KappaSweepRow> rows;
  for (double k : grid) {
    KappaSweepRow row;
    row.kappa = k;
    row.concurrence = concurrence_pure(family_state(k));
    row.s_fixed = s1bit.evaluate(build_protocol(ProtocolId::OneBitFixed, k).behavior());
    row.s_optimized = s1bit.evaluate(build_protocol(ProtocolId::OneBitOptimized, k).behavior());
    rows.push_back(row);
  }
  return rows;
}

std::string kappa_sweep_csv(const std::vector<KappaSweepRow>& rows) {
  std::ostringstream os;
  os << "kappa,concurrence,S_fixed,S_optimized\n";
  os.precision(12);
  for (const auto& r : rows)
    os << r.kappa << "," << r.concurrence << "," << r.s_fixed << "," << r.s_optimized << "\n";
  return os.str();
}

} // namespace ctc
