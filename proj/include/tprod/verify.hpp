#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tprod {

struct VerifyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Suites: core, spectral, majorization, expander, chernoff, all.
// Unknown suite names raise std::invalid_argument.
std::vector<VerifyResult> verify_suite(const std::string& suite, std::uint64_t seed);

bool all_pass(const std::vector<VerifyResult>& results);

std::string verify_json(const std::string& suite, const std::vector<VerifyResult>& results);

}  // namespace tprod
