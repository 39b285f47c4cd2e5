#pragma once

#include <string>
#include <vector>

#include "ctc/inequality.hpp"
#include "ctc/quantum.hpp"

namespace ctc {

enum class InequalityId { S1bit, Stau3, DimWitness, ChshSub };

InequalityId inequality_id_from_string(const std::string& s);
std::string to_string(InequalityId id);

/// A built-in inequality together with its scenario and correlator basis.
struct NamedInequality {
  InequalityId id;
  std::string name;
  Scenario scenario;
  Basis basis;
  Inequality ineq;

  double evaluate(const BehaviorF& behavior) const;
};

/// S1bit:      sum of 8 signed <A_x B_y> terms <= 6 over the 3x3 one-bit scenario.
/// Stau3:      CHSH block minus 4 <BC> terms <= 6 over the binary tripartite scenario.
/// DimWitness: 5 signed <B_x,y> marginals <= 3 over the 3x2 one-bit scenario.
/// ChshSub:    the CHSH combination on settings (A1,A2,B0,B1) inside the S1bit
///             scenario, bound 2.
NamedInequality build_inequality(InequalityId id);

enum class ProtocolId { OneBitFixed, OneBitOptimized, Tau3 };

/// Published measurement protocols, realized as a communication protocol on a
/// two-qubit state (OneBit*) or as sequential qubit settings (Tau3).
struct NamedProtocol {
  ProtocolId id;
  std::string name;
  double kappa = 1.0;      // OneBit* family parameter
  QState state;            // two-qubit state (OneBit*) or initial qubit (Tau3)
  CommProtocol comm;       // OneBit*
  std::vector<std::vector<Observable>> sequential_settings; // Tau3

  BehaviorF behavior() const;
};

NamedProtocol build_protocol(ProtocolId id, double kappa = 1.0);
NamedProtocol build_tau3(const QState& initial_qubit);

struct ChshDecomposition {
  double s1bit = 0.0;
  double chsh = 0.0;
  double residual = 0.0; // s1bit - 4 - chsh
};

ChshDecomposition chsh_decomposition(const BehaviorF& behavior);

struct KappaSweepRow {
  double kappa = 0.0;
  double concurrence = 0.0;
  double s_fixed = 0.0;
  double s_optimized = 0.0;
};

std::vector<KappaSweepRow> kappa_sweep(const std::vector<double>& grid);
std::vector<double> uniform_grid(int points = 101); // [0, 1]

/// CSV with header "kappa,concurrence,S_fixed,S_optimized".
std::string kappa_sweep_csv(const std::vector<KappaSweepRow>& rows);

} // namespace ctc
