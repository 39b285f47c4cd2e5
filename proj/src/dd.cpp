#include "ctc/dd.hpp"

#include <algorithm>

#include <boost/dynamic_bitset.hpp>

#include "ctc/errors.hpp"
#include "ctc/parallel.hpp"

namespace ctc {

namespace {

using Bits = boost::dynamic_bitset<std::uint64_t>;

struct Ray {
  RatVec v;
  Bits zeros; // processed halfspaces this ray is tight on
};

// The double description method on the cone of valid inequalities
// W = {(beta, a) : a . v_i <= beta for all vertices}, with halfspaces
// h_i = (1, -v_i). Lineality is carried explicitly; rays are kept primitive.
class DualDescription {
public:
  DualDescription(const RatMat& points, int threads) : threads_(threads) {
    const Index d = points.cols();
    n_ = points.rows();
    dim_ = d + 1;
    halfspaces_.resize(static_cast<size_t>(n_));
    for (Index i = 0; i < n_; ++i) {
      RatVec h(dim_);
      h[0] = 1;
      for (Index j = 0; j < d; ++j) h[j + 1] = -points(i, j);
      halfspaces_[static_cast<size_t>(i)] = std::move(h);
    }
    std::sort(halfspaces_.begin(), halfspaces_.end(), [](const RatVec& a, const RatVec& b) {
      for (Index i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (b[i] < a[i]) return false;
      }
      return false;
    });
    for (Index j = 0; j < dim_; ++j) {
      RatVec e = RatVec::Zero(dim_);
      e[j] = 1;
      lineality_.push_back(std::move(e));
    }
  }

  void run() {
    for (Index k = 0; k < n_; ++k) insert(k);
  }

  std::vector<RatVec> lineality() const { return lineality_; }

  // Extreme rays with nonempty tight sets (the empty-set class is the trivial
  // inequality 0 . x <= 1).
  std::vector<RatVec> facet_rays() const {
    std::vector<RatVec> out;
    for (const auto& r : rays_)
      if (r.zeros.any()) out.push_back(r.v);
    return out;
  }

private:
  Rational dot(const RatVec& a, const RatVec& b) const {
    Rational s = 0;
    for (Index i = 0; i < dim_; ++i)
      if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
  }

  void insert(Index k) {
    const RatVec& h = halfspaces_[static_cast<size_t>(k)];

    // If some lineality vector leaves the hyperplane, split it instead of
    // combining rays.
    for (size_t li = 0; li < lineality_.size(); ++li) {
      Rational dw = dot(lineality_[li], h);
      if (dw == 0) continue;
      RatVec w = lineality_[li];
      lineality_.erase(lineality_.begin() + static_cast<std::ptrdiff_t>(li));
      for (auto& l : lineality_) {
        Rational dl = dot(l, h);
        if (dl != 0) l = primitive_integer(RatVec(l - (dl / dw) * w));
      }
      for (auto& r : rays_) {
        Rational dr = dot(r.v, h);
        if (dr != 0) r.v = primitive_integer(RatVec(r.v - (dr / dw) * w));
        r.zeros.push_back(true);
      }
      Ray nr;
      nr.v = dw > 0 ? w : RatVec(-w);
      nr.v = primitive_integer(nr.v);
      nr.zeros.resize(static_cast<size_t>(k) + 1);
      for (Index j = 0; j < k; ++j) nr.zeros.set(static_cast<size_t>(j));
      rays_.push_back(std::move(nr));
      return;
    }

    std::vector<Index> pos, neg;
    std::vector<Rational> dots(rays_.size());
    parallel_chunks(static_cast<Index>(rays_.size()), threads_, [&](int, Index lo, Index hi) {
      for (Index i = lo; i < hi; ++i) dots[static_cast<size_t>(i)] = dot(rays_[static_cast<size_t>(i)].v, h);
    });
    for (size_t i = 0; i < rays_.size(); ++i) {
      if (dots[i] > 0) pos.push_back(static_cast<Index>(i));
      else if (dots[i] < 0) neg.push_back(static_cast<Index>(i));
      rays_[i].zeros.push_back(dots[i] == 0);
    }
    if (neg.empty()) return;

    // combinatorial adjacency: r+ and r- are adjacent iff no third ray is
    // tight on everything both are tight on
    const size_t quotient_dim = static_cast<size_t>(dim_) - lineality_.size();
    std::vector<std::pair<Index, Index>> pairs;
    for (Index ip : pos)
      for (Index in : neg) {
        Bits meet = rays_[static_cast<size_t>(ip)].zeros & rays_[static_cast<size_t>(in)].zeros;
        if (quotient_dim >= 2 && meet.count() + 2 < quotient_dim) continue;
        pairs.emplace_back(ip, in);
      }
    std::vector<char> adjacent(pairs.size(), 0);
    parallel_chunks(static_cast<Index>(pairs.size()), threads_, [&](int, Index lo, Index hi) {
      for (Index pi = lo; pi < hi; ++pi) {
        auto [ip, in] = pairs[static_cast<size_t>(pi)];
        Bits meet = rays_[static_cast<size_t>(ip)].zeros & rays_[static_cast<size_t>(in)].zeros;
        bool adj = true;
        for (size_t j = 0; j < rays_.size(); ++j) {
          if (j == static_cast<size_t>(ip) || j == static_cast<size_t>(in)) continue;
          if (meet.is_subset_of(rays_[j].zeros)) {
            adj = false;
            break;
          }
        }
        adjacent[static_cast<size_t>(pi)] = adj ? 1 : 0;
      }
    });

    std::vector<Ray> next;
    for (size_t i = 0; i < rays_.size(); ++i)
      if (dots[i] >= 0) next.push_back(std::move(rays_[i]));
    for (size_t pi = 0; pi < pairs.size(); ++pi) {
      if (!adjacent[pi]) continue;
      auto [ip, in] = pairs[pi];
      const Ray& rp = rays_[static_cast<size_t>(ip)];
      const Ray& rn = rays_[static_cast<size_t>(in)];
      Ray nr;
      nr.v = primitive_integer(RatVec(dots[static_cast<size_t>(ip)] * rn.v -
                                      dots[static_cast<size_t>(in)] * rp.v));
      nr.zeros = rp.zeros & rn.zeros;
      nr.zeros.set(static_cast<size_t>(k));
      next.push_back(std::move(nr));
    }
    rays_ = std::move(next);
  }

  Index n_ = 0;
  Index dim_ = 0;
  int threads_ = 1;
  std::vector<RatVec> halfspaces_;
  std::vector<RatVec> lineality_;
  std::vector<Ray> rays_;
};

} // namespace

FacetResult facets(const VertexSet& vs, const FacetOptions& opts) {
  if (vs.count() == 0) throw std::invalid_argument("facets of an empty vertex set");
  const Index d = vs.dim();
  if (d > opts.dim_cap)
    throw CapExceeded("polytope dimension " + std::to_string(d) + " exceeds cap " +
                      std::to_string(opts.dim_cap));

  DualDescription dd(vs.points, resolve_threads(opts.threads));
  dd.run();

  FacetResult res;
  res.basis = vs.basis;

  // canonical equality basis: RREF over (beta, coeffs) rows
  auto lin = dd.lineality();
  RatMat eq(static_cast<Index>(lin.size()), d + 1);
  for (size_t i = 0; i < lin.size(); ++i) eq.row(static_cast<Index>(i)) = lin[i].transpose();
  auto pivots = rref(eq);
  for (Index i = 0; i < eq.rows(); ++i) {
    Inequality e{eq.row(i).tail(d).transpose(), eq(i, 0), true};
    res.equalities.push_back(canonicalize(e));
  }
  std::sort(res.equalities.begin(), res.equalities.end(), lex_less);
  res.affine_dimension = d - eq.rows();

  for (const auto& ray : dd.facet_rays()) {
    RatVec reduced = reduce_against(ray, eq, pivots);
    Inequality f{reduced.tail(d).transpose(), reduced[0], false};
    res.inequalities.push_back(canonicalize(f));
  }
  std::sort(res.inequalities.begin(), res.inequalities.end(), lex_less);
  res.inequalities.erase(std::unique(res.inequalities.begin(), res.inequalities.end()),
                         res.inequalities.end());
  return res;
}

VertexMaximum maximize_over_vertices(const Inequality& in, const VertexSet& vs) {
  if (in.coeffs.size() != vs.dim())
    throw std::invalid_argument("inequality and vertex set bases do not match");
  VertexMaximum best;
  for (Index r = 0; r < vs.count(); ++r) {
    Rational val = 0;
    for (Index j = 0; j < vs.dim(); ++j)
      if (in.coeffs[j] != 0 && vs.points(r, j) != 0) val += in.coeffs[j] * vs.points(r, j);
    if (best.argmax < 0 || val > best.value) {
      best.value = val;
      best.argmax = r;
    }
  }
  return best;
}

} // namespace ctc
