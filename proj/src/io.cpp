#include "ctc/io.hpp"

#include <array>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace ctc {

namespace {

Json rational_to_json(const Rational& r) {
  if (r.is_integer() && abs(numerator(r)) < BigInt(1) << 62)
    return Json(numerator(r).convert_to<long long>());
  return Json(to_fraction_string(r));
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<long long>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw std::invalid_argument("expected an integer or a \"p/q\" string");
}

} // namespace

Json to_json(const Scenario& s) {
  Json steps = Json::array();
  for (const auto& st : s.steps()) steps.push_back({{"inputs", st.inputs}, {"outputs", st.outputs}});
  Json msgs = Json::array();
  for (const auto& e : s.messages())
    msgs.push_back({{"from", e.from}, {"to", e.to}, {"dim", e.dim}});
  return Json{{"steps", steps}, {"messages", msgs}};
}

Scenario scenario_from_json(const Json& j) {
  std::vector<Step> steps;
  for (const auto& st : j.at("steps"))
    steps.push_back({st.at("inputs").get<int>(), st.at("outputs").get<int>()});
  std::vector<MessageEdge> msgs;
  if (j.contains("messages"))
    for (const auto& e : j["messages"])
      msgs.push_back({e.at("from").get<int>(), e.at("to").get<int>(), e.at("dim").get<int>()});
  return Scenario(std::move(steps), std::move(msgs));
}

namespace {

Scenario scenario_inline_or_path(const Json& j) {
  if (j.is_string()) return scenario_from_json(load_json(j.get<std::string>()));
  return scenario_from_json(j);
}

} // namespace

Json to_json(const BehaviorF& b) {
  Json values = Json::array();
  for (Index i = 0; i < b.values.size(); ++i) values.push_back(b.values[i]);
  return Json{{"scenario", to_json(b.scenario)}, {"mode", "float"}, {"values", values}};
}

Json to_json(const BehaviorR& b) {
  Json values = Json::array();
  for (Index i = 0; i < b.values.size(); ++i)
    values.push_back(to_fraction_string(b.values[i]));
  return Json{{"scenario", to_json(b.scenario)}, {"mode", "rational"}, {"values", values}};
}

bool behavior_json_is_rational(const Json& j) {
  return j.at("mode").get<std::string>() == "rational";
}

BehaviorF behavior_from_json(const Json& j) {
  Scenario sc = scenario_inline_or_path(j.at("scenario"));
  const auto& vals = j.at("values");
  BehaviorF b{sc, Vec(static_cast<Index>(vals.size()))};
  const bool rational = behavior_json_is_rational(j);
  Index i = 0;
  for (const auto& v : vals)
    b.values[i++] = rational ? to_double(parse_rational(v.get<std::string>())) : v.get<double>();
  if (b.values.size() != sc.behavior_length())
    throw std::invalid_argument("behavior length does not match its scenario");
  return b;
}

BehaviorR behavior_rational_from_json(const Json& j) {
  Scenario sc = scenario_inline_or_path(j.at("scenario"));
  if (!behavior_json_is_rational(j))
    throw std::invalid_argument("behavior file is in float mode; rational values required");
  const auto& vals = j.at("values");
  BehaviorR b{sc, RatVec(static_cast<Index>(vals.size()))};
  Index i = 0;
  for (const auto& v : vals) b.values[i++] = parse_rational(v.get<std::string>());
  if (b.values.size() != sc.behavior_length())
    throw std::invalid_argument("behavior length does not match its scenario");
  return b;
}

Json to_json(const CausalModel& m) {
  Json j{{"kind", to_string(m.kind)}, {"scenario", to_json(m.scenario)}};
  if (m.kind == ModelKind::OneWayMessage) j["message_dim"] = m.message_dim;
  return j;
}

CausalModel model_from_json(const Json& j) {
  ModelKind kind = model_kind_from_string(j.at("kind").get<std::string>());
  Scenario sc = scenario_inline_or_path(j.at("scenario"));
  int mdim = j.value("message_dim", 0);
  return CausalModel(kind, std::move(sc), mdim);
}

Json to_json(const Basis& b) {
  if (b.is_probability()) return Json("probability");
  return Json{{"id", b.id}};
}

Basis basis_from_json(const Json& j, const Scenario& s) {
  if (j.is_string()) {
    const std::string id = j.get<std::string>();
    return basis_from_id(id, s);
  }
  return basis_from_id(j.at("id").get<std::string>(), s);
}

Json to_json(const VertexSet& vs) {
  Json points = Json::array();
  for (Index r = 0; r < vs.count(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < vs.dim(); ++c) row.push_back(to_fraction_string(vs.points(r, c)));
    points.push_back(row);
  }
  return Json{{"model", to_json(vs.model)}, {"basis", to_json(vs.basis)}, {"points", points}};
}

VertexSet vertexset_from_json(const Json& j) {
  CausalModel model = model_from_json(j.at("model"));
  Basis basis = basis_from_json(j.at("basis"), model.scenario);
  const auto& pts = j.at("points");
  const Index rows = static_cast<Index>(pts.size());
  const Index cols = rows > 0 ? static_cast<Index>(pts.front().size()) : basis.dim(model.scenario);
  VertexSet vs{model, basis, RatMat(rows, cols)};
  Index r = 0;
  for (const auto& row : pts) {
    if (static_cast<Index>(row.size()) != cols)
      throw std::invalid_argument("ragged vertex rows");
    Index c = 0;
    for (const auto& v : row) vs.points(r, c++) = parse_rational(v.get<std::string>());
    ++r;
  }
  if (cols != basis.dim(model.scenario))
    throw std::invalid_argument("vertex dimension does not match the declared basis");
  return vs;
}

Json to_json(const Inequality& in) {
  Json coeffs = Json::array();
  for (Index i = 0; i < in.coeffs.size(); ++i) coeffs.push_back(rational_to_json(in.coeffs[i]));
  Json j{{"coeffs", coeffs}, {"bound", rational_to_json(in.bound)}};
  if (in.is_equality) j["equality"] = true;
  return j;
}

Inequality inequality_from_json(const Json& j) {
  const auto& cs = j.at("coeffs");
  Inequality in;
  in.coeffs = RatVec(static_cast<Index>(cs.size()));
  Index i = 0;
  for (const auto& c : cs) in.coeffs[i++] = rational_from_json(c);
  in.bound = rational_from_json(j.at("bound"));
  in.is_equality = j.value("equality", false);
  return in;
}

Json to_json(const FacetResult& f, const Scenario& s) {
  Json eqs = Json::array(), ineqs = Json::array();
  for (const auto& e : f.equalities) eqs.push_back(to_json(e));
  for (const auto& q : f.inequalities) ineqs.push_back(to_json(q));
  return Json{{"scenario", to_json(s)},
              {"basis", to_json(f.basis)},
              {"affine_dimension", f.affine_dimension},
              {"equalities", eqs},
              {"inequalities", ineqs}};
}

FacetResult facets_from_json(const Json& j, Scenario* scenario_out) {
  Scenario sc = scenario_inline_or_path(j.at("scenario"));
  if (scenario_out != nullptr) *scenario_out = sc;
  FacetResult f;
  f.basis = basis_from_json(j.at("basis"), sc);
  f.affine_dimension = j.value("affine_dimension", 0);
  for (const auto& e : j.at("equalities")) {
    Inequality q = inequality_from_json(e);
    q.is_equality = true;
    f.equalities.push_back(q);
  }
  for (const auto& e : j.at("inequalities")) f.inequalities.push_back(inequality_from_json(e));
  return f;
}

Json to_json(const Observable& o) { return Json{{"theta", o.theta}, {"phi", o.phi}}; }

Observable observable_from_json(const Json& j) {
  return Observable{j.at("theta").get<double>(), j.at("phi").get<double>()};
}

Json to_json(const CommProtocol& p) {
  Json alice = Json::array(), bob = Json::array(), msg = Json::array();
  for (const auto& o : p.alice) alice.push_back(to_json(o));
  for (const auto& row : p.message) msg.push_back(row);
  for (const auto& row : p.bob) {
    Json r = Json::array();
    for (const auto& o : row) r.push_back(to_json(o));
    bob.push_back(r);
  }
  return Json{{"alice", alice}, {"message", msg}, {"bob", bob}};
}

CommProtocol protocol_from_json(const Json& j) {
  CommProtocol p;
  for (const auto& o : j.at("alice")) p.alice.push_back(observable_from_json(o));
  for (const auto& row : j.at("message")) p.message.push_back(row.get<std::vector<int>>());
  for (const auto& row : j.at("bob")) {
    p.bob.emplace_back();
    for (const auto& o : row) p.bob.back().push_back(observable_from_json(o));
  }
  p.validate();
  return p;
}

Json to_json(const MembershipResult& r) {
  Json j{{"inside", r.inside}, {"escalated_to_exact", r.escalated_to_exact}};
  if (r.inside) {
    Json w = Json::array();
    if (r.weights_exact.size() > 0)
      for (Index i = 0; i < r.weights_exact.size(); ++i)
        w.push_back(to_fraction_string(r.weights_exact[i]));
    else
      for (Index i = 0; i < r.weights_float.size(); ++i) w.push_back(r.weights_float[i]);
    j["weights"] = w;
  } else {
    j["certificate"] = to_json(*r.certificate);
    j["margin"] = r.margin;
  }
  return j;
}

Json to_json(const ScanReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries)
    entries.push_back(Json{{"index", e.index},
                           {"bound", e.bound},
                           {"best_value", e.best_value},
                           {"excess", e.excess},
                           {"flagged", e.flagged},
                           {"restarts_used", e.restarts_used},
                           {"seed", e.seed}});
  return Json{{"entries", entries}, {"flags", r.flags}, {"worst_excess", r.worst_excess}};
}

// --- files -------------------------------------------------------------------

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write '" + path + "'");
  out << content;
}

Json load_json(const std::string& path) { return Json::parse(read_file(path)); }

// --- sha256 ------------------------------------------------------------------

namespace {

struct Sha256 {
  std::array<std::uint32_t, 8> h{0x6a09e667u, 0xbb67ae85u, 0x3c6ef372u, 0xa54ff53au,
                                 0x510e527fu, 0x9b05688cu, 0x1f83d9abu, 0x5be0cd19u};
  static constexpr std::array<std::uint32_t, 64> k{
      0x428a2f98, 0x71374491, 0xb5c0fbcf, 0xe9b5dba5, 0x3956c25b, 0x59f111f1, 0x923f82a4,
      0xab1c5ed5, 0xd807aa98, 0x12835b01, 0x243185be, 0x550c7dc3, 0x72be5d74, 0x80deb1fe,
      0x9bdc06a7, 0xc19bf174, 0xe49b69c1, 0xefbe4786, 0x0fc19dc6, 0x240ca1cc, 0x2de92c6f,
      0x4a7484aa, 0x5cb0a9dc, 0x76f988da, 0x983e5152, 0xa831c66d, 0xb00327c8, 0xbf597fc7,
      0xc6e00bf3, 0xd5a79147, 0x06ca6351, 0x14292967, 0x27b70a85, 0x2e1b2138, 0x4d2c6dfc,
      0x53380d13, 0x650a7354, 0x766a0abb, 0x81c2c92e, 0x92722c85, 0xa2bfe8a1, 0xa81a664b,
      0xc24b8b70, 0xc76c51a3, 0xd192e819, 0xd6990624, 0xf40e3585, 0x106aa070, 0x19a4c116,
      0x1e376c08, 0x2748774c, 0x34b0bcb5, 0x391c0cb3, 0x4ed8aa4a, 0x5b9cca4f, 0x682e6ff3,
      0x748f82ee, 0x78a5636f, 0x84c87814, 0x8cc70208, 0x90befffa, 0xa4506ceb, 0xbef9a3f7,
      0xc67178f2};

  static std::uint32_t rotr(std::uint32_t x, int n) { return (x >> n) | (x << (32 - n)); }

  void block(const unsigned char* p) {
    std::uint32_t w[64];
    for (int i = 0; i < 16; ++i)
      w[i] = (std::uint32_t(p[4 * i]) << 24) | (std::uint32_t(p[4 * i + 1]) << 16) |
             (std::uint32_t(p[4 * i + 2]) << 8) | std::uint32_t(p[4 * i + 3]);
    for (int i = 16; i < 64; ++i) {
      std::uint32_t s0 = rotr(w[i - 15], 7) ^ rotr(w[i - 15], 18) ^ (w[i - 15] >> 3);
      std::uint32_t s1 = rotr(w[i - 2], 17) ^ rotr(w[i - 2], 19) ^ (w[i - 2] >> 10);
      w[i] = w[i - 16] + s0 + w[i - 7] + s1;
    }
    auto a = h;
    for (int i = 0; i < 64; ++i) {
      std::uint32_t s1 = rotr(a[4], 6) ^ rotr(a[4], 11) ^ rotr(a[4], 25);
      std::uint32_t ch = (a[4] & a[5]) ^ (~a[4] & a[6]);
      std::uint32_t t1 = a[7] + s1 + ch + k[static_cast<size_t>(i)] + w[i];
      std::uint32_t s0 = rotr(a[0], 2) ^ rotr(a[0], 13) ^ rotr(a[0], 22);
      std::uint32_t mj = (a[0] & a[1]) ^ (a[0] & a[2]) ^ (a[1] & a[2]);
      std::uint32_t t2 = s0 + mj;
      a[7] = a[6]; a[6] = a[5]; a[5] = a[4]; a[4] = a[3] + t1;
      a[3] = a[2]; a[2] = a[1]; a[1] = a[0]; a[0] = t1 + t2;
    }
    for (int i = 0; i < 8; ++i) h[static_cast<size_t>(i)] += a[static_cast<size_t>(i)];
  }
};

} // namespace

std::string sha256_hex(const std::string& data) {
  Sha256 ctx;
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  const std::uint64_t bitlen = static_cast<std::uint64_t>(data.size()) * 8;
  size_t i = 0;
  for (; i + 64 <= data.size(); i += 64) ctx.block(bytes + i);
  std::array<unsigned char, 128> tail{};
  size_t rem = data.size() - i;
  std::copy(bytes + i, bytes + data.size(), tail.begin());
  tail[rem] = 0x80;
  size_t total = rem + 1 <= 56 ? 64 : 128;
  for (int b = 0; b < 8; ++b)
    tail[total - 8 + static_cast<size_t>(b)] =
        static_cast<unsigned char>(bitlen >> (56 - 8 * b));
  ctx.block(tail.data());
  if (total == 128) ctx.block(tail.data() + 64);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (std::uint32_t v : ctx.h)
    for (int b = 28; b >= 0; b -= 4) out.push_back(hex[(v >> b) & 0xf]);
  return out;
}

// --- manifests ----------------------------------------------------------------

ManifestBuilder::ManifestBuilder() {
  j = Json{{"tool", "ctc"},
           {"version", "0.1.0"},
           {"inputs", Json::object()},
           {"outputs", Json::array()},
           {"params", Json::object()}};
}

void ManifestBuilder::set_command(const std::vector<std::string>& argv) { j["command"] = argv; }

void ManifestBuilder::add_input(const std::string& path) {
  const std::string data = read_file(path);
  j["inputs"][path] = Json{{"sha256", sha256_hex(data)}, {"bytes", data.size()}};
}

void ManifestBuilder::add_output(const std::string& path) { j["outputs"].push_back(path); }

void ManifestBuilder::set_param(const std::string& key, const Json& value) {
  j["params"][key] = value;
}

std::string ManifestBuilder::str() const { return j.dump(2) + "\n"; }

// --- vertex cache ---------------------------------------------------------------

namespace {

std::optional<std::string> cache_path(const CausalModel& model) {
  const char* dir = std::getenv("CTC_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  const std::string key = sha256_hex(to_json(model).dump()).substr(0, 16);
  return std::string(dir) + "/ctc-vertices-" + key + ".json";
}

} // namespace

std::optional<VertexSet> load_cached_vertices(const CausalModel& model) {
  auto path = cache_path(model);
  if (!path || !std::filesystem::exists(*path)) return std::nullopt;
  VertexSet vs = vertexset_from_json(load_json(*path));
  if (!(vs.model == model)) return std::nullopt;
  return vs;
}

void store_cached_vertices(const VertexSet& vs) {
  auto path = cache_path(vs.model);
  if (!path) return;
  std::filesystem::create_directories(std::filesystem::path(*path).parent_path());
  write_file(*path, to_json(vs).dump() + "\n");
}

VertexSet enumerate_vertices_cached(const CausalModel& model, const EnumerationOptions& opts) {
  if (auto cached = load_cached_vertices(model)) return *cached;
  VertexSet vs = enumerate_vertices(model, opts);
  store_cached_vertices(vs);
  return vs;
}

} // namespace ctc
