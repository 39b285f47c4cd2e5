#pragma once

#include <string>
#include <vector>

#include "ctc/model.hpp"

namespace ctc {

struct ReproduceOptions {
  std::uint64_t seed = 42;
  int threads = 0;
  int restarts = 100;
  bool full_scan = false; // scan all facets instead of symmetry-class representatives
};

struct CaseResult {
  std::string id;
  std::string description;
  std::string expected;
  std::string computed;
  std::string source; // published | derived | definition
  double tolerance = 0.0;
  bool pass = false;
  double seconds = 0.0;
};

const std::vector<std::string>& reproduce_case_ids();
CaseResult run_reproduce_case(const std::string& id, const ReproduceOptions& opts = {});
std::vector<CaseResult> reproduce_all(const ReproduceOptions& opts = {});

std::string format_table(const std::vector<CaseResult>& results);
std::string format_markdown(const std::vector<CaseResult>& results);

/// Named models used throughout the CLI: onebit33, onebit32, temporalweak,
/// temporalfull, lhv22.
CausalModel builtin_model(const std::string& name);
const std::vector<std::string>& builtin_model_names();

} // namespace ctc
