#pragma once

#include <cstdint>
#include <vector>

#include "mptpp/instance.hpp"
#include "mptpp/rng.hpp"
#include "mptpp/scenario.hpp"
#include "mptpp/schedule.hpp"

namespace mptpp {

struct ConstructorConfig {
  double max_time_init = 1.0; // seconds per ESCC day
  int tour_size_cap = 6;      // wakeup plus candidates considered per ESCC day
  std::uint64_t seed = 1;
};

// Per-day record of the ESCC candidate list, for inspection.
struct EsccDayTrace {
  std::vector<CityId> ranked;     // eligible cities, best reward first
  std::vector<double> rewards;    // aligned with ranked
  std::vector<CityId> candidates; // cities chosen for permutation
  long permutations = 0;
};

Schedule shrc(const Instance& inst, const ScenarioConfig& sc, Rng& rng);

Schedule escc(const Instance& inst, const ScenarioConfig& sc, const ConstructorConfig& cfg = {},
              std::vector<EsccDayTrace>* trace = nullptr);

} // namespace mptpp
