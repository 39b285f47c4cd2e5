#pragma once

#include <stdexcept>
#include <string>

namespace ctc {

/// A configured resource limit (strategy count, polytope dimension) was hit.
class CapExceeded : public std::runtime_error {
public:
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/// Float-mode numerics failed and no exact fallback was possible.
class NumericalFailure : public std::runtime_error {
public:
  explicit NumericalFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace ctc
