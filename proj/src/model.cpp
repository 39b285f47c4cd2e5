#include "ctc/model.hpp"

#include <algorithm>
#include <thread>

#include "ctc/errors.hpp"
#include "ctc/parallel.hpp"

namespace ctc {

std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::Lhv: return "LHV";
    case ModelKind::OneWayMessage: return "OneWayMessage";
    case ModelKind::TemporalFull: return "TemporalFull";
    case ModelKind::TemporalWeak: return "TemporalWeak";
  }
  throw std::logic_error("unreachable");
}

ModelKind model_kind_from_string(const std::string& s) {
  if (s == "LHV") return ModelKind::Lhv;
  if (s == "OneWayMessage") return ModelKind::OneWayMessage;
  if (s == "TemporalFull") return ModelKind::TemporalFull;
  if (s == "TemporalWeak") return ModelKind::TemporalWeak;
  throw std::invalid_argument("unknown model kind '" + s + "'");
}

CausalModel::CausalModel(ModelKind k, Scenario sc, int msg_dim)
    : kind(k), scenario(std::move(sc)), message_dim(msg_dim) {
  switch (kind) {
    case ModelKind::Lhv:
      break; // compatible with any scenario; declared channels are unused
    case ModelKind::OneWayMessage: {
      if (scenario.messages().size() != 1)
        throw std::invalid_argument("OneWayMessage requires exactly one message edge");
      if (scenario.num_steps() != 2)
        throw std::invalid_argument("OneWayMessage is defined for two-step scenarios");
      const auto& e = scenario.messages()[0];
      if (message_dim == 0) message_dim = e.dim;
      if (message_dim != e.dim)
        throw std::invalid_argument("model message dimension conflicts with the declared channel");
      if (message_dim < 1) throw std::invalid_argument("message dimension must be >= 1");
      break;
    }
    case ModelKind::TemporalFull:
    case ModelKind::TemporalWeak:
      if (scenario.num_steps() < 3)
        throw std::invalid_argument("temporal models need at least three steps");
      if (!scenario.messages().empty())
        throw std::invalid_argument("temporal models use scenarios without message edges");
      break;
  }
}

namespace {

struct TableSpec {
  Index cells = 0;
  int card = 1;
};

// Packs 0/1 behavior entries so that word-wise comparison is entrywise
// lexicographic (bit 0 is the most significant bit of word 0).
using PackedRow = std::vector<std::uint64_t>;

void set_bit(PackedRow& row, Index i) {
  row[static_cast<size_t>(i / 64)] |= std::uint64_t(1) << (63 - (i % 64));
}

class StrategyEnumerator {
public:
  StrategyEnumerator(const CausalModel& m) : model_(m), sc_(m.scenario) {
    const auto& steps = sc_.steps();
    switch (m.kind) {
      case ModelKind::Lhv:
        for (const auto& st : steps) tables_.push_back({st.inputs, st.outputs});
        break;
      case ModelKind::OneWayMessage:
        tables_.push_back({steps[0].inputs, steps[0].outputs});          // a = f(x)
        tables_.push_back({steps[0].inputs, m.message_dim});             // m = mu(x)
        tables_.push_back({static_cast<Index>(steps[1].inputs) * m.message_dim,
                           steps[1].outputs});                           // b = g(y, m)
        break;
      case ModelKind::TemporalFull:
        tables_.push_back({steps[0].inputs, steps[0].outputs});
        for (size_t i = 1; i < steps.size(); ++i)
          tables_.push_back({static_cast<Index>(steps[i - 1].outputs) * steps[i - 1].inputs *
                                 steps[i].inputs,
                             steps[i].outputs});
        break;
      case ModelKind::TemporalWeak:
        tables_.push_back({steps[0].inputs, steps[0].outputs});
        tables_.push_back({static_cast<Index>(steps[0].outputs) * steps[0].inputs * steps[1].inputs,
                           steps[1].outputs});
        for (size_t i = 2; i < steps.size(); ++i)
          tables_.push_back({static_cast<Index>(steps[i - 1].inputs) * steps[i].inputs,
                             steps[i].outputs});
        break;
    }
  }

  std::uint64_t raw_count() const {
    long double total = 1.0L;
    std::uint64_t n = 1;
    for (const auto& t : tables_) {
      for (Index c = 0; c < t.cells; ++c) {
        total *= t.card;
        if (total > 1.8e19L) return UINT64_MAX;
        n *= static_cast<std::uint64_t>(t.card);
      }
    }
    return n;
  }

  // Decodes strategy `idx` and evaluates it to a packed 0/1 behavior row.
  PackedRow evaluate(std::uint64_t idx) const {
    std::vector<std::vector<int>> tab(tables_.size());
    for (size_t t = 0; t < tables_.size(); ++t) {
      tab[t].resize(static_cast<size_t>(tables_[t].cells));
      for (Index c = 0; c < tables_[t].cells; ++c) {
        tab[t][static_cast<size_t>(c)] = static_cast<int>(idx % tables_[t].card);
        idx /= static_cast<std::uint64_t>(tables_[t].card);
      }
    }
    const Index len = sc_.behavior_length();
    PackedRow row(static_cast<size_t>((len + 63) / 64), 0);
    const Index nout = sc_.output_tuples();
    std::vector<int> in, out(static_cast<size_t>(sc_.num_steps()));
    for (Index ctx = 0; ctx < sc_.input_contexts(); ++ctx) {
      sc_.input_coordinates(ctx, in);
      respond(tab, in, out);
      set_bit(row, ctx * nout + sc_.output_index(out));
    }
    return row;
  }

private:
  void respond(const std::vector<std::vector<int>>& tab, const std::vector<int>& in,
               std::vector<int>& out) const {
    const auto& steps = sc_.steps();
    switch (model_.kind) {
      case ModelKind::Lhv:
        for (size_t i = 0; i < steps.size(); ++i) out[i] = tab[i][static_cast<size_t>(in[i])];
        break;
      case ModelKind::OneWayMessage: {
        out[0] = tab[0][static_cast<size_t>(in[0])];
        const int m = tab[1][static_cast<size_t>(in[0])];
        out[1] = tab[2][static_cast<size_t>(in[1] * model_.message_dim + m)];
        break;
      }
      case ModelKind::TemporalFull:
        out[0] = tab[0][static_cast<size_t>(in[0])];
        for (size_t i = 1; i < steps.size(); ++i) {
          const Index cell = (static_cast<Index>(out[i - 1]) * steps[i - 1].inputs + in[i - 1]) *
                                 steps[i].inputs +
                             in[i];
          out[i] = tab[i][static_cast<size_t>(cell)];
        }
        break;
      case ModelKind::TemporalWeak: {
        out[0] = tab[0][static_cast<size_t>(in[0])];
        const Index cell1 =
            (static_cast<Index>(out[0]) * steps[0].inputs + in[0]) * steps[1].inputs + in[1];
        out[1] = tab[1][static_cast<size_t>(cell1)];
        for (size_t i = 2; i < steps.size(); ++i) {
          const Index cell = static_cast<Index>(in[i - 1]) * steps[i].inputs + in[i];
          out[i] = tab[i][static_cast<size_t>(cell)];
        }
        break;
      }
    }
  }

  const CausalModel& model_;
  const Scenario& sc_;
  std::vector<TableSpec> tables_;
};

} // namespace

VertexSet enumerate_vertices(const CausalModel& model, const EnumerationOptions& opts) {
  StrategyEnumerator en(model);
  const std::uint64_t raw = en.raw_count();
  if (raw > opts.raw_strategy_cap)
    throw CapExceeded("raw strategy count " + std::to_string(raw) + " exceeds cap " +
                      std::to_string(opts.raw_strategy_cap));

  const int workers = resolve_threads(opts.threads);
  std::vector<std::vector<PackedRow>> local(static_cast<size_t>(workers));
  parallel_chunks(static_cast<Index>(raw), workers, [&](int w, Index lo, Index hi) {
    auto& rows = local[static_cast<size_t>(w)];
    for (Index i = lo; i < hi; ++i) rows.push_back(en.evaluate(static_cast<std::uint64_t>(i)));
    std::sort(rows.begin(), rows.end());
    rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  });

  std::vector<PackedRow> all;
  for (auto& l : local) {
    all.insert(all.end(), std::make_move_iterator(l.begin()), std::make_move_iterator(l.end()));
    l.clear();
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  const Index len = model.scenario.behavior_length();
  VertexSet vs{model, probability_basis(), RatMat::Zero(static_cast<Index>(all.size()), len)};
  for (Index r = 0; r < vs.points.rows(); ++r)
    for (Index c = 0; c < len; ++c)
      if (all[static_cast<size_t>(r)][static_cast<size_t>(c / 64)] &
          (std::uint64_t(1) << (63 - (c % 64))))
        vs.points(r, c) = 1;
  return vs;
}

VertexSet project(const VertexSet& vs, const Basis& basis) {
  if (basis.is_probability()) return vs;
  if (!vs.basis.is_probability())
    throw std::invalid_argument("projection starts from the probability basis");
  if (basis.functionals.cols() != vs.points.cols())
    throw std::invalid_argument("functional length mismatch");
  RatMat projected = vs.points * basis.functionals.transpose();

  // dedup + canonical sort of rows
  std::vector<Index> order(static_cast<size_t>(projected.rows()));
  for (Index i = 0; i < projected.rows(); ++i) order[static_cast<size_t>(i)] = i;
  auto row_less = [&](Index a, Index b) {
    for (Index j = 0; j < projected.cols(); ++j) {
      if (projected(a, j) < projected(b, j)) return true;
      if (projected(b, j) < projected(a, j)) return false;
    }
    return false;
  };
  auto row_eq = [&](Index a, Index b) {
    for (Index j = 0; j < projected.cols(); ++j)
      if (projected(a, j) != projected(b, j)) return false;
    return true;
  };
  std::sort(order.begin(), order.end(), row_less);
  order.erase(std::unique(order.begin(), order.end(), row_eq), order.end());

  VertexSet out{vs.model, basis, RatMat(static_cast<Index>(order.size()), projected.cols())};
  for (size_t r = 0; r < order.size(); ++r) out.points.row(static_cast<Index>(r)) = projected.row(order[r]);
  return out;
}

BehaviorR vertex_behavior(const VertexSet& vs, Index row) {
  if (!vs.basis.is_probability())
    throw std::invalid_argument("vertex behaviors exist in the probability basis only");
  if (row < 0 || row >= vs.count()) throw std::invalid_argument("vertex row out of range");
  return BehaviorR{vs.model.scenario, vs.points.row(row).transpose()};
}

} // namespace ctc
