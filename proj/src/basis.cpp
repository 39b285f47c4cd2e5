#include "ctc/basis.hpp"

#include <stdexcept>

#include "ctc/rational.hpp"

namespace ctc {

namespace {

// Fills one functional row: the signed sum (-1)^(outcome parity over `steps`)
// over all behavior entries matching the fixed inputs, averaging free inputs.
void fill_signed_row(RatMat& m, Index row, const Scenario& sc, const std::vector<int>& steps,
                     const std::vector<int>& fixed_inputs, int n_fixed) {
  const Index nout = sc.output_tuples();
  std::vector<int> free_radices;
  std::vector<int> free_pos;
  for (int i = n_fixed; i < sc.num_steps(); ++i) {
    free_radices.push_back(sc.steps()[static_cast<size_t>(i)].inputs);
    free_pos.push_back(i);
  }
  Index n_free = 1;
  for (int r : free_radices) n_free *= r;
  Rational weight = Rational(1) / Rational(n_free);

  std::vector<int> in(static_cast<size_t>(sc.num_steps())), out;
  for (int i = 0; i < n_fixed; ++i) in[static_cast<size_t>(i)] = fixed_inputs[static_cast<size_t>(i)];
  for_each_tuple(free_radices.empty() ? std::vector<int>{1} : free_radices,
                 [&](const std::vector<int>& f) {
                   for (size_t k = 0; k < free_pos.size(); ++k)
                     in[static_cast<size_t>(free_pos[k])] = f[k];
                   Index ctx = sc.input_index(in);
                   for (Index t = 0; t < nout; ++t) {
                     sc.output_coordinates(t, out);
                     int parity = 0;
                     for (int st : steps) parity += out[static_cast<size_t>(st)];
                     Rational sign = parity % 2 == 0 ? weight : -weight;
                     m(row, ctx * nout + t) += sign;
                   }
                 });
}

void require_binary(const Scenario& s, int upto) {
  for (int i = 0; i < upto; ++i)
    if (s.steps()[static_cast<size_t>(i)].outputs != 2)
      throw std::invalid_argument("correlator bases need binary outcomes");
}

} // namespace

Basis probability_basis() { return Basis{}; }

Basis ab_correlator_basis(const Scenario& s) {
  if (s.num_steps() < 2) throw std::invalid_argument("AB correlators need two steps");
  require_binary(s, 2);
  const int nx = s.steps()[0].inputs, ny = s.steps()[1].inputs;
  Basis b;
  b.id = "corr:ab";
  b.functionals = RatMat::Zero(static_cast<Index>(nx) * ny, s.behavior_length());
  Index row = 0;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y, ++row) {
      b.labels.push_back("AB_" + std::to_string(x) + "," + std::to_string(y));
      fill_signed_row(b.functionals, row, s, {0, 1}, {x, y}, 2);
    }
  return b;
}

Basis b_marginal_basis(const Scenario& s) {
  if (s.num_steps() < 2) throw std::invalid_argument("B marginals need two steps");
  require_binary(s, 2);
  const int nx = s.steps()[0].inputs, ny = s.steps()[1].inputs;
  Basis b;
  b.id = "corr:b";
  b.functionals = RatMat::Zero(static_cast<Index>(nx) * ny, s.behavior_length());
  Index row = 0;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y, ++row) {
      b.labels.push_back("B_" + std::to_string(x) + "," + std::to_string(y));
      fill_signed_row(b.functionals, row, s, {1}, {x, y}, 2);
    }
  return b;
}

Basis ab_bc_correlator_basis(const Scenario& s) {
  if (s.num_steps() != 3) throw std::invalid_argument("AB+BC basis needs exactly three steps");
  require_binary(s, 3);
  const int nx = s.steps()[0].inputs, ny = s.steps()[1].inputs, nz = s.steps()[2].inputs;
  Basis b;
  b.id = "corr:ab_bc";
  const Index rows = static_cast<Index>(nx) * ny + static_cast<Index>(nx) * ny * nz;
  b.functionals = RatMat::Zero(rows, s.behavior_length());
  Index row = 0;
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y, ++row) {
      b.labels.push_back("AB_" + std::to_string(x) + "," + std::to_string(y));
      fill_signed_row(b.functionals, row, s, {0, 1}, {x, y}, 2);
    }
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < ny; ++y)
      for (int z = 0; z < nz; ++z, ++row) {
        b.labels.push_back("BC_" + std::to_string(x) + "," + std::to_string(y) + "," +
                           std::to_string(z));
        fill_signed_row(b.functionals, row, s, {1, 2}, {x, y, z}, 3);
      }
  return b;
}

Basis basis_from_id(const std::string& id, const Scenario& s) {
  if (id == "probability") return probability_basis();
  if (id == "corr:ab") return ab_correlator_basis(s);
  if (id == "corr:b") return b_marginal_basis(s);
  if (id == "corr:ab_bc") return ab_bc_correlator_basis(s);
  throw std::invalid_argument("unknown basis id '" + id + "'");
}

RatVec project_point(const RatVec& p, const Basis& basis) {
  if (basis.is_probability()) return p;
  if (basis.functionals.cols() != p.size())
    throw std::invalid_argument("functional length mismatch");
  return basis.functionals * p;
}

Vec project_point(const Vec& p, const Basis& basis) {
  if (basis.is_probability()) return p;
  if (basis.functionals.cols() != p.size())
    throw std::invalid_argument("functional length mismatch");
  Vec out = Vec::Zero(basis.functionals.rows());
  for (Index i = 0; i < basis.functionals.rows(); ++i)
    for (Index j = 0; j < basis.functionals.cols(); ++j)
      if (basis.functionals(i, j) != 0) out[i] += to_double(basis.functionals(i, j)) * p[j];
  return out;
}

Vec project_behavior(const BehaviorF& b, const Basis& basis) {
  return project_point(b.values, basis);
}

} // namespace ctc
