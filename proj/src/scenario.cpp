#include "mptpp/scenario.hpp"

#include "mptpp/error.hpp"

namespace mptpp {

std::string to_string(ScenarioId id) {
  switch (id) {
  case ScenarioId::base: return "base";
  case ScenarioId::full_1meet: return "full_1meet";
  case ScenarioId::rew_only: return "rew_only";
  case ScenarioId::alt_1depot: return "alt_1depot";
  }
  return "base";
}

ScenarioId parse_scenario(const std::string& s) {
  if (s == "base") return ScenarioId::base;
  if (s == "full_1meet") return ScenarioId::full_1meet;
  if (s == "rew_only") return ScenarioId::rew_only;
  if (s == "alt_1depot") return ScenarioId::alt_1depot;
  throw DomainError("unknown scenario '" + s + "'");
}

int MeetingCaps::of(SizeClass c) const {
  switch (c) {
  case SizeClass::big: return big;
  case SizeClass::midsize: return midsize;
  case SizeClass::small: return small;
  }
  return small;
}

ScenarioConfig apply_scenario(const CampaignParams& params, ScenarioId id,
                              std::optional<RewardDirection> direction) {
  ScenarioConfig sc;
  sc.id = id;
  sc.reward_direction = direction;
  sc.require_daily_meeting = params.require_daily_meeting;
  sc.end_at_capital = params.end_at_capital;
  sc.max_meetings_per_day = params.max_meetings_per_day;
  sc.kappa = params.kappa;
  switch (id) {
  case ScenarioId::base: break;
  case ScenarioId::full_1meet: sc.meeting_caps = {1, 1, 1}; break;
  case ScenarioId::rew_only:
    sc.travel_cost_weight = 0.0;
    sc.kappa_enabled = false;
    break;
  case ScenarioId::alt_1depot: sc.force_closed_at_capital = true; break;
  }
  return sc;
}

} // namespace mptpp
