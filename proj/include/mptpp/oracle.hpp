#pragma once

#include <cstddef>

#include "mptpp/instance.hpp"
#include "mptpp/scenario.hpp"
#include "mptpp/schedule.hpp"

namespace mptpp {

struct OracleLimits {
  int max_cities = 6;
  int max_days = 2;
  std::size_t max_states = 20'000'000;
  double time_limit_s = 600;
};

struct OracleResult {
  Schedule schedule;
  double objective = 0;
  std::size_t states = 0; // memo entries plus evaluated day tours
};

// Exhaustive dynamic program over day tours. Throws LimitError when the
// instance exceeds the limits and ConstructionError when nothing is feasible.
OracleResult solve_exact(const Instance& inst, const ScenarioConfig& sc, const OracleLimits& limits = {});

} // namespace mptpp
