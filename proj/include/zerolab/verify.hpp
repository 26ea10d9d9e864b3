#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace zerolab {

enum class VerifySuite { kIdentities, kOracle, kGrid };

struct VerifyCheck {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyResult {
  std::string suite;
  std::vector<VerifyCheck> checks;

  bool pass() const;
  nlohmann::json to_json() const;
};

/// Throws ParameterError for an unknown name.
VerifySuite parse_suite(const std::string& name);

VerifyResult run_verify(VerifySuite suite);

}  // namespace zerolab
