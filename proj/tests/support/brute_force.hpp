#pragma once

#include "mptpp/instance.hpp"
#include "mptpp/scenario.hpp"
#include "mptpp/schedule.hpp"

namespace fixtures {

struct BruteForceResult {
  double best = 0;
  long feasible_count = 0;
  mptpp::Schedule argmax;
};

// Plain enumeration of every chained schedule, scored by the library
// evaluator and filtered by the library checker. Intended for n <= 4, m <= 2.
BruteForceResult brute_force(const mptpp::Instance& inst, const mptpp::ScenarioConfig& sc);

} // namespace fixtures
