#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace mptpp {

using CityId = int;

enum class Criticality { noncritical, negative_critical, positive_critical, pos_neg_critical };
enum class SizeClass { big, midsize, small };
enum class RewardDirection { front_loaded, back_loaded };

int criticality_factor(Criticality c);

std::string to_string(Criticality c);
std::string to_string(SizeClass s);
std::string to_string(RewardDirection d);
Criticality parse_criticality(const std::string& s);
SizeClass parse_size_class(const std::string& s);
RewardDirection parse_reward_direction(const std::string& s);

struct City {
  CityId id = 0;
  std::string name;
  std::int64_t population = 0;
  Criticality criticality = Criticality::noncritical;
  SizeClass size_class = SizeClass::small;
  double meeting_minutes = 60;
  std::optional<CityId> parent_id;
  double base_reward = 0;
  // True when base_reward came from the input file instead of derivation.
  bool reward_overridden = false;

  int cf() const { return criticality_factor(criticality); }
  bool operator==(const City&) const = default;
};

struct CampaignParams {
  int days = 1;
  CityId capital_id = 1;
  double max_tour_minutes = 840;
  int max_meetings_per_day = 4;
  int kappa = 5;
  double repeat_depreciation = 2.0;
  double cost_normalizer = 1.0;
  std::int64_t min_population = 78550;
  RewardDirection reward_direction = RewardDirection::front_loaded;
  bool require_daily_meeting = true;
  bool end_at_capital = false;

  bool operator==(const CampaignParams&) const = default;
};

using Matrix = std::vector<std::vector<double>>;

struct TravelMatrices {
  Matrix cost;
  Matrix minutes;
  bool operator==(const TravelMatrices&) const = default;
};

struct Instance {
  std::string name;
  std::vector<City> cities; // cities[k].id == k + 1
  CampaignParams params;
  TravelMatrices travel;

  int n() const { return static_cast<int>(cities.size()); }
  const City& city(CityId id) const { return cities.at(static_cast<std::size_t>(id - 1)); }
  bool has_city(CityId id) const { return id >= 1 && id <= n(); }
  double cost(CityId i, CityId j) const { return travel.cost[i][j]; }
  double minutes(CityId i, CityId j) const { return travel.minutes[i][j]; }
  bool operator==(const Instance&) const = default;
};

struct InstanceViolation {
  std::string invariant;
  std::string location;
  std::string render() const { return invariant + "@" + location; }
};

double derive_multiplier(const City& city, std::optional<int> population_rank);

double derive_base_reward(std::int64_t population, int cf, double multiplier,
                          std::int64_t min_pop);

// Population rank (1 = largest) of each non-town city, towns take their parent's.
// Returns ranks indexed by city id (index 0 unused, nullopt when undefined).
std::vector<std::optional<int>> population_ranks(const Instance& inst);

// Fills base_reward for every city without an override.
void derive_rewards(Instance& inst);

std::vector<InstanceViolation> validate(const Instance& inst);

Instance instance_from_json_text(const std::string& text);
std::string instance_to_json_text(const Instance& inst);
Instance load_instance(const std::string& path);
void save_instance(const Instance& inst, const std::string& path);

struct Spread {
  double width = 100;
  double height = 100;
  double minutes_per_unit = 3.0;
  double cost_per_unit = 2.0;
};

struct GenerateOptions {
  Spread spread;
  double max_tour_minutes = 840;
  int max_meetings_per_day = 4;
  int kappa = 5;
};

Instance generate_instance(int n, int m, std::uint64_t seed, const GenerateOptions& opts = {});

} // namespace mptpp
