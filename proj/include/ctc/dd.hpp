#pragma once

#include <vector>

#include "ctc/inequality.hpp"
#include "ctc/model.hpp"

namespace ctc {

struct FacetOptions {
  int dim_cap = 30; // refuse polytopes beyond this (affine) dimension
  int threads = 0;
};

/// Dual description of conv(points): affine-hull equalities plus the facet
/// inequalities within the hull. Everything exact-rational, canonicalized
/// modulo the hull and sorted, so output is independent of insertion order
/// and worker count.
struct FacetResult {
  Basis basis;
  std::vector<Inequality> equalities;
  std::vector<Inequality> inequalities;
  Index affine_dimension = 0;
};

FacetResult facets(const VertexSet& vs, const FacetOptions& opts = {});

/// Exact maximum of coeffs . v over the vertices (ties resolved to the
/// lowest row index).
struct VertexMaximum {
  Rational value;
  Index argmax = -1;
};

VertexMaximum maximize_over_vertices(const Inequality& in, const VertexSet& vs);

} // namespace ctc
