#include "mptpp/reward.hpp"

#include <algorithm>

#include "mptpp/error.hpp"

namespace mptpp {

RewardModel RewardModel::from(const Instance& inst, const ScenarioConfig& sc) {
  RewardModel r;
  r.instance = &inst;
  r.direction = sc.direction(inst.params);
  r.K = inst.params.repeat_depreciation;
  r.Kbar = inst.params.cost_normalizer;
  return r;
}

double first_meeting_reward(const City& city, int t, const RewardModel& model) {
  const int m = model.m();
  if (t < 1 || t > m) throw DomainError("day " + std::to_string(t) + " outside 1.." + std::to_string(m));
  if (model.direction == RewardDirection::front_loaded)
    return city.base_reward * static_cast<double>(m - t + 1) / m;
  return city.base_reward * static_cast<double>(t + m) / m;
}

double repeat_meeting_reward(const City& city, int t, int s, const RewardModel& model) {
  const int m = model.m();
  if (t < 2 || t > m) throw DomainError("repeat meeting day " + std::to_string(t) + " outside 2.." + std::to_string(m));
  if (s < 1 || s >= t) throw DomainError("recency " + std::to_string(s) + " outside 1.." + std::to_string(t - 1));
  const double md = m;
  if (model.direction == RewardDirection::front_loaded)
    return city.base_reward * ((m - t + 1) / md) * (s / (model.K * md));
  return city.base_reward * s * (t + m) / (model.K * md * md);
}

double meeting_reward(const City& city, int t, int previous_day, const RewardModel& model,
                      const ScenarioConfig& sc) {
  if (previous_day <= 0) return first_meeting_reward(city, t, model);
  if (!sc.repeat_rewards()) return 0.0;
  return repeat_meeting_reward(city, t, t - previous_day, model);
}

double city_reward(const City& city, const std::vector<int>& days, const RewardModel& model,
                   const ScenarioConfig& sc) {
  double total = 0;
  int prev = 0;
  for (int t : days) {
    total += meeting_reward(city, t, prev, model, sc);
    prev = t;
  }
  return total;
}

MeetingLedger::MeetingLedger(const Schedule& s, int n, bool strict)
    : days_(static_cast<std::size_t>(n) + 1) {
  for (int t = 1; t <= s.m(); ++t) {
    const DayTour& d = s.day(t);
    for (CityId c : d.meetings) {
      if (c < 1 || c > n) throw DomainError("meeting at unknown city " + std::to_string(c));
      if (strict && !d.visits(c))
        throw DomainError("meeting at city " + std::to_string(c) + " not visited on day " + std::to_string(t));
      auto& v = days_[static_cast<std::size_t>(c)];
      if (v.empty() || v.back() != t) v.push_back(t);
    }
  }
}

double reward_total(const Schedule& s, const RewardModel& model, const ScenarioConfig& sc) {
  const Instance& inst = *model.instance;
  MeetingLedger ledger(s, inst.n());
  double total = 0;
  for (const City& c : inst.cities) total += city_reward(c, ledger.days_of(c.id), model, sc);
  return total;
}

double travel_total(const Schedule& s, const Instance& inst) {
  double total = 0;
  for (const DayTour& d : s.days) total += tour_travel_cost(d, inst);
  return total;
}

double net_benefit(const Schedule& s, const RewardModel& model, const ScenarioConfig& sc,
                   bool strict) {
  const Instance& inst = *model.instance;
  if (strict) MeetingLedger(s, inst.n(), true);
  const double rewards = reward_total(s, model, sc);
  if (sc.travel_cost_weight == 0.0) return rewards;
  return rewards - sc.travel_cost_weight * model.Kbar * travel_total(s, inst);
}

double net_benefit(const Schedule& s, const Instance& inst, const ScenarioConfig& sc) {
  return net_benefit(s, RewardModel::from(inst, sc), sc);
}

} // namespace mptpp
