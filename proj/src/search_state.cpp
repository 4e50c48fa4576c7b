#include "mptpp/search.hpp"

#include <algorithm>
#include <cmath>

namespace mptpp {

bool granular_admissible(const Instance& inst, CityId u, CityId j, CityId k, double lambda) {
  if (std::isinf(lambda)) return true;
  if (k == 0) return true; // appending at the end breaks no arc
  const double near = std::min(inst.minutes(u, j), inst.minutes(u, k));
  const double arc = inst.minutes(j, k);
  if (arc == 0) return near == 0;
  return near <= lambda * arc;
}

std::string to_string(MoveKind k) {
  switch (k) {
  case MoveKind::swap_inter: return "N1";
  case MoveKind::drop_add: return "N2";
  case MoveKind::replace: return "N3";
  case MoveKind::swap_intra: return "N4";
  case MoveKind::reattribute: return "N4r";
  case MoveKind::perturb_swap2: return "M1";
  case MoveKind::perturb_replace2: return "M2";
  case MoveKind::perturb_relocate: return "M3";
  }
  return "?";
}

SearchState::SearchState(const Instance& inst, const ScenarioConfig& sc, Schedule s)
    : inst_(&inst), sc_(sc), model_(RewardModel::from(inst, sc)), s_(std::move(s)) {
  rebuild();
}

void SearchState::rebuild() {
  const auto n = static_cast<std::size_t>(inst_->n());
  meet_days_.assign(n + 1, {});
  visit_count_.assign(n + 1, 0);
  day_cost_.clear();
  for (int d = 0; d < s_.m(); ++d) {
    const DayTour& tour = s_.days[static_cast<std::size_t>(d)];
    for (CityId c : tour.meetings) {
      auto& v = meet_days_[static_cast<std::size_t>(c)];
      if (v.empty() || v.back() != d + 1) v.push_back(d + 1);
    }
    day_cost_.push_back(tour_travel_cost(tour, *inst_));
  }
  walk_ = Walk::from(s_);
  for (CityId c : walk_.nodes) ++visit_count_[static_cast<std::size_t>(c)];
  nights_ = capital_nights(s_, inst_->params.capital_id);
  city_reward_.assign(n + 1, 0.0);
  double rewards = 0, cost = 0;
  for (const City& c : inst_->cities) {
    city_reward_[static_cast<std::size_t>(c.id)] = city_reward(c, meet_days_[static_cast<std::size_t>(c.id)], model_, sc_);
    rewards += city_reward_[static_cast<std::size_t>(c.id)];
  }
  for (double x : day_cost_) cost += x;
  objective_ = sc_.travel_cost_weight == 0.0 ? rewards : rewards - sc_.travel_cost_weight * model_.Kbar * cost;
}

double SearchState::meeting_value(CityId c, int d) const {
  const auto& v = meet_days_[static_cast<std::size_t>(c)];
  const auto it = std::find(v.begin(), v.end(), d + 1);
  if (it == v.end()) return 0.0;
  const int prev = it == v.begin() ? 0 : *(it - 1);
  return meeting_reward(inst_->city(c), d + 1, prev, model_, sc_);
}

SearchState::Eval SearchState::evaluate(const std::vector<int>& days, const std::vector<DayTour>& tours) const {
  ++stats_.evaluations;
  Eval ev;
  const int m = s_.m();
  const CityId cap = inst_->params.capital_id;
  auto tour_at = [&](int d) -> const DayTour& {
    for (std::size_t k = 0; k < days.size(); ++k)
      if (days[k] == d) return tours[k];
    return s_.days[static_cast<std::size_t>(d)];
  };
  auto changed = [&](int d) { return std::find(days.begin(), days.end(), d) != days.end(); };

  std::vector<Violation> scratch;
  bool terminals_moved = false;
  for (std::size_t k = 0; k < days.size(); ++k) {
    const int d = days[k];
    const DayTour& t = tours[k];
    check_day_local(t, d + 1, *inst_, sc_, scratch);
    if (!scratch.empty()) return ev;
    if (d == 0 ? t.wakeup() != cap : tour_at(d - 1).terminal() != t.wakeup()) return ev;
    if (d + 1 < m && !changed(d + 1) && t.terminal() != s_.days[static_cast<std::size_t>(d + 1)].wakeup()) return ev;
    if (sc_.end_at_capital && d == m - 1 && t.terminal() != cap) return ev;
    if (t.terminal() != s_.days[static_cast<std::size_t>(d)].terminal()) terminals_moved = true;
  }
  if (sc_.kappa_enabled && terminals_moved) {
    auto nights = nights_;
    for (std::size_t k = 0; k < days.size(); ++k)
      nights[static_cast<std::size_t>(days[k])] = tours[k].terminal() == cap;
    if (!capital_windows_ok(nights, sc_.kappa)) return ev;
  }

  // cities whose meeting days may change
  std::vector<CityId> touched;
  for (std::size_t k = 0; k < days.size(); ++k) {
    const auto& old = s_.days[static_cast<std::size_t>(days[k])].meetings;
    touched.insert(touched.end(), old.begin(), old.end());
    touched.insert(touched.end(), tours[k].meetings.begin(), tours[k].meetings.end());
  }
  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

  double delta = 0;
  std::vector<int> nd;
  for (CityId c : touched) {
    nd.clear();
    for (int t : meet_days_[static_cast<std::size_t>(c)])
      if (!changed(t - 1)) nd.push_back(t);
    for (std::size_t k = 0; k < days.size(); ++k)
      if (tours[k].meets(c)) nd.push_back(days[k] + 1);
    std::sort(nd.begin(), nd.end());
    const City& city = inst_->city(c);
    if (static_cast<int>(nd.size()) > sc_.meeting_caps.of(city.size_class)) return ev;
    delta += city_reward(city, nd, model_, sc_) - city_reward_[static_cast<std::size_t>(c)];
  }
  if (sc_.travel_cost_weight != 0.0) {
    double dc = 0;
    for (std::size_t k = 0; k < days.size(); ++k)
      dc += tour_travel_cost(tours[k], *inst_) - day_cost_[static_cast<std::size_t>(days[k])];
    delta -= sc_.travel_cost_weight * model_.Kbar * dc;
  }
  ev.feasible = true;
  ev.delta = delta;
  return ev;
}

void SearchState::set_days(const std::vector<int>& days, const std::vector<DayTour>& tours) {
  for (std::size_t k = 0; k < days.size(); ++k) s_.days[static_cast<std::size_t>(days[k])] = tours[k];
  rebuild();
}

void SearchState::apply(const MoveCandidate& mv) { set_days(mv.days, mv.after); }
void SearchState::revert(const MoveCandidate& mv) { set_days(mv.days, mv.before); }

} // namespace mptpp
