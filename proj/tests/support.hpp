#pragma once

// Shared test fixtures: simulated panels built the same way as the
// `simulate` subcommand.

#include <cstdint>

#include "fnets/panel.hpp"
#include "fnets/rng.hpp"
#include "fnets/simulate.hpp"

namespace fixture {

enum class Common { None, Unrestricted, Restricted };

struct Design {
  fnets::MatrixXd data;
  fnets::VarSimulation var;
};

inline Design simulate(std::uint64_t seed, Eigen::Index n, Eigen::Index p, Common common = Common::Unrestricted,
                       int var_order = 1, int q = 2,
                       fnets::InnovationKind innovation = fnets::InnovationKind::Identity) {
  fnets::SimSpec spec;
  spec.n = n;
  spec.p = p;
  spec.q = q;
  spec.var_order = var_order;
  spec.innovation = innovation;
  spec.seed = seed;
  fnets::Rng rng(seed);
  Design d{fnets::MatrixXd(), fnets::sim_var(spec, rng)};
  d.data = d.var.data;
  if (common == Common::Unrestricted) d.data += fnets::sim_unrestricted(spec, rng).data;
  if (common == Common::Restricted) d.data += fnets::sim_restricted(spec, rng).data;
  return d;
}

}  // namespace fixture
