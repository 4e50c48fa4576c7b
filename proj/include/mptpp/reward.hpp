#pragma once

#include <vector>

#include "mptpp/instance.hpp"
#include "mptpp/scenario.hpp"
#include "mptpp/schedule.hpp"

namespace mptpp {

struct RewardModel {
  const Instance* instance = nullptr;
  RewardDirection direction = RewardDirection::front_loaded;
  double K = 2.0;
  double Kbar = 1.0;

  int m() const { return instance->params.days; }

  static RewardModel from(const Instance& inst, const ScenarioConfig& sc);
};

double first_meeting_reward(const City& city, int t, const RewardModel& model);
double repeat_meeting_reward(const City& city, int t, int s, const RewardModel& model);

// Reward of a meeting at `city` on day t given the previous meeting day
// (0 when this is the first meeting).
double meeting_reward(const City& city, int t, int previous_day, const RewardModel& model,
                      const ScenarioConfig& sc);

// Sum of rewards for a sorted list of meeting days of one city.
double city_reward(const City& city, const std::vector<int>& days, const RewardModel& model,
                   const ScenarioConfig& sc);

class MeetingLedger {
public:
  MeetingLedger() = default;
  // Days are deduplicated per city. Strict mode throws when a meeting city
  // is not on that day's route.
  MeetingLedger(const Schedule& s, int n, bool strict = false);

  const std::vector<int>& days_of(CityId c) const { return days_.at(static_cast<std::size_t>(c)); }
  int n() const { return static_cast<int>(days_.size()) - 1; }

private:
  std::vector<std::vector<int>> days_; // indexed by city id
};

double reward_total(const Schedule& s, const RewardModel& model, const ScenarioConfig& sc);
double travel_total(const Schedule& s, const Instance& inst);

double net_benefit(const Schedule& s, const RewardModel& model, const ScenarioConfig& sc,
                   bool strict = false);

// Convenience: model taken from the instance and scenario.
double net_benefit(const Schedule& s, const Instance& inst, const ScenarioConfig& sc);

} // namespace mptpp
