#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace props {

struct PropertyResult {
  std::string module;
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

/// Runs every module invariant on `cases` random instances.
std::vector<PropertyResult> run_all(std::uint64_t seed = 20240611, int cases = 100);

}  // namespace props
