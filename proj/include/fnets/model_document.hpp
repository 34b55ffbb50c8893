#pragma once

#include <cstdint>
#include <string>

#include "fnets/pipeline.hpp"

namespace fnets {

inline constexpr int kSchemaVersion = 1;

struct Provenance {
  std::uint64_t seed = 111;
  std::string input_path;
  std::string created;  // ISO-8601 UTC
};

/// JSON model document; matrices are row-major nested arrays at full
/// double precision.
std::string serialize_model(const FnetsModel& model, const Provenance& prov);
FnetsModel parse_model(const std::string& text, Provenance* prov = nullptr);

std::string utc_timestamp();

}  // namespace fnets
