#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mptpp/instance.hpp"
#include "mptpp/scenario.hpp"
#include "mptpp/schedule.hpp"
#include "mptpp/search.hpp"

namespace mptpp {

// 100 * (reference - obj) / reference. Throws DomainError on a zero reference.
double gap_percent(double reference, double obj);

struct Reference {
  double value = 0; // lower bound the gap is taken against
  bool proven = false;
  std::optional<double> best_known;
};

// Keyed by (instance name, scenario name).
using ReferenceTable = std::map<std::pair<std::string, std::string>, Reference>;

// CSV with header instance,scenario,reference,proven,bks.
ReferenceTable parse_references(const std::string& csv);
ReferenceTable load_references(const std::string& path);

struct BenchRecord {
  std::string instance;
  std::string scenario;
  int runs = 0;
  std::optional<double> best;
  std::optional<double> mean;
  std::optional<double> mean_cpu_s;
  std::optional<double> reference;
  std::optional<double> gap_pct;
  std::string error; // non-empty marks an error row
};

struct GeneratedSource {
  int n = 0;
  int m = 0;
  std::uint64_t seed = 1;
};

struct BenchSpec {
  std::vector<std::string> instance_paths;
  std::vector<GeneratedSource> generated;
  std::vector<ScenarioId> scenarios{ScenarioId::base};
  std::optional<RewardDirection> direction;
  SearchConfig search;
  std::optional<std::string> references_path;
};

// Relative paths inside the spec are resolved against base_dir.
BenchSpec parse_bench_spec(const std::string& json_text, const std::string& base_dir = ".");
BenchSpec load_bench_spec(const std::string& path);

struct BenchOptions {
  bool parallel = true; // replications through OpenMP
  bool timing = true;   // false leaves mean_cpu_s empty
};

std::vector<BenchRecord> run_bench(const BenchSpec& spec, const ReferenceTable& refs,
                                   const BenchOptions& opts = {});

extern const char* const kBenchHeader;
std::string bench_csv(const std::vector<BenchRecord>& records);

// "Ankara (M) → Hatay (M) → İskenderun (M)"
std::string report_day(const DayTour& tour, const Instance& inst);
std::string report_schedule(const Schedule& s, const Instance& inst, const ScenarioConfig& sc);

} // namespace mptpp
