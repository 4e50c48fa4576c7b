#pragma once

#include <optional>
#include <string>

#include "mptpp/instance.hpp"

namespace mptpp {

enum class ScenarioId { base, full_1meet, rew_only, alt_1depot };

std::string to_string(ScenarioId id);
ScenarioId parse_scenario(const std::string& s);

struct MeetingCaps {
  int big = 3;
  int midsize = 2;
  int small = 1;
  int of(SizeClass c) const;
  bool operator==(const MeetingCaps&) const = default;
};

struct ScenarioConfig {
  ScenarioId id = ScenarioId::base;
  double travel_cost_weight = 1.0;
  bool kappa_enabled = true;
  bool force_closed_at_capital = false;
  MeetingCaps meeting_caps;
  std::optional<RewardDirection> reward_direction;
  bool require_daily_meeting = true;
  bool end_at_capital = false;
  // Resolved from params so callers need only the config.
  int max_meetings_per_day = 4;
  int kappa = 5;

  bool repeat_rewards() const { return id != ScenarioId::full_1meet; }
  RewardDirection direction(const CampaignParams& p) const {
    return reward_direction.value_or(p.reward_direction);
  }
  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig apply_scenario(const CampaignParams& params, ScenarioId id,
                              std::optional<RewardDirection> direction = std::nullopt);

} // namespace mptpp
