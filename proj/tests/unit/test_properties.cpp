#include <doctest.h>

#include <iostream>

#include "properties/properties.hpp"

TEST_CASE("module invariants hold on random instances") {
  const auto results = props::run_all();
  for (const auto& r : results) {
    INFO(r.module << ": " << r.name << " " << r.first_failure);
    CHECK(r.cases >= 100);
    CHECK(r.failures == 0);
    if (r.failures)
      std::cerr << r.module << ": " << r.name << ": " << r.failures << "/" << r.cases << " failed; "
                << r.first_failure << "\n";
  }
}
