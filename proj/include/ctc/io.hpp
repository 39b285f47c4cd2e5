#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "ctc/dd.hpp"
#include "ctc/independence.hpp"
#include "ctc/membership.hpp"
#include "ctc/model.hpp"
#include "ctc/optimize.hpp"
#include "ctc/protocols.hpp"
#include "ctc/quantum.hpp"

namespace ctc {

using Json = nlohmann::json;

// --- JSON encodings (formats are stable; files self-describe their scenario) ---

Json to_json(const Scenario& s);
Scenario scenario_from_json(const Json& j);

Json to_json(const BehaviorF& b);
Json to_json(const BehaviorR& b);
/// Accepts {"scenario": inline-or-path, "mode": "rational"|"float", "values": [...]}.
BehaviorF behavior_from_json(const Json& j);
BehaviorR behavior_rational_from_json(const Json& j);
bool behavior_json_is_rational(const Json& j);

Json to_json(const CausalModel& m);
CausalModel model_from_json(const Json& j);

Json to_json(const Basis& b);
Basis basis_from_json(const Json& j, const Scenario& s);

Json to_json(const VertexSet& vs);
VertexSet vertexset_from_json(const Json& j);

Json to_json(const Inequality& in);
Inequality inequality_from_json(const Json& j);

Json to_json(const FacetResult& f, const Scenario& s);
FacetResult facets_from_json(const Json& j, Scenario* scenario_out = nullptr);

Json to_json(const Observable& o);
Observable observable_from_json(const Json& j);

Json to_json(const CommProtocol& p);
CommProtocol protocol_from_json(const Json& j);

Json to_json(const MembershipResult& r);
Json to_json(const ScanReport& r);

// --- files, hashing, manifests, cache ---

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
Json load_json(const std::string& path);

std::string sha256_hex(const std::string& data);

struct ManifestBuilder {
  Json j;
  ManifestBuilder();
  void set_command(const std::vector<std::string>& argv);
  void add_input(const std::string& path);
  void add_output(const std::string& path);
  void set_param(const std::string& key, const Json& value);
  std::string str() const;
};

/// CTC_CACHE_DIR caching of vertex sets, keyed by the model hash.
std::optional<VertexSet> load_cached_vertices(const CausalModel& model);
void store_cached_vertices(const VertexSet& vs);
VertexSet enumerate_vertices_cached(const CausalModel& model, const EnumerationOptions& opts = {});

} // namespace ctc
