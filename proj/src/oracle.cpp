#include "mptpp/oracle.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include "mptpp/error.hpp"

namespace mptpp {

namespace {

struct TourOption {
  std::vector<CityId> route;
  std::vector<CityId> meetings;
  double travel_cost = 0;
};

using Encoding = std::vector<int>;

struct Best {
  bool feasible = false;
  double value = 0;
  std::vector<TourOption const*> days;
  Encoding enc;
};

class Solver {
public:
  Solver(const Instance& inst, const ScenarioConfig& sc, const OracleLimits& lim)
      : inst_(inst), sc_(sc), lim_(lim), n_(inst.n()), m_(inst.params.days),
        start_(std::chrono::steady_clock::now()) {
    options_.resize(static_cast<std::size_t>(n_) + 1);
    built_.assign(static_cast<std::size_t>(n_) + 1, false);
  }

  OracleResult run() {
    std::vector<std::vector<int>> ledger(static_cast<std::size_t>(n_) + 1);
    const Best b = solve(1, inst_.params.capital_id, 0, ledger);
    if (!b.feasible) throw ConstructionError("no feasible schedule exists");
    OracleResult r;
    for (const TourOption* o : b.days) r.schedule.days.push_back(DayTour{o->route, o->meetings});
    r.objective = b.value;
    r.states = states_;
    return r;
  }

private:
  const Instance& inst_;
  const ScenarioConfig& sc_;
  const OracleLimits& lim_;
  int n_, m_;
  std::chrono::steady_clock::time_point start_;
  std::size_t states_ = 0;
  std::vector<std::vector<TourOption>> options_;
  std::vector<bool> built_;
  std::map<std::vector<int>, Best> memo_;

  void tick() {
    if (++states_ > lim_.max_states) throw LimitError("oracle state limit exceeded");
    if ((states_ & 0xfff) == 0) {
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
      if (el > lim_.time_limit_s) throw LimitError("oracle time limit exceeded");
    }
  }

  // Every route from w with distinct cities (plus an optional return to w)
  // and every meeting subset satisfying the single-day rules.
  const std::vector<TourOption>& options(CityId w) {
    if (built_[w]) return options_[w];
    built_[w] = true;
    std::vector<CityId> path{w};
    std::vector<bool> used(static_cast<std::size_t>(n_) + 1, false);
    used[w] = true;
    extend(path, used, 0.0, 0.0, options_[w]);
    return options_[w];
  }

  void extend(std::vector<CityId>& path, std::vector<bool>& used, double minutes, double cost,
              std::vector<TourOption>& out) {
    const int alpha = sc_.max_meetings_per_day;
    add_route(path, minutes, cost, out);
    if (path.size() >= 2) {
      const CityId w = path.front(), last = path.back();
      std::vector<CityId> closed = path;
      closed.push_back(w);
      add_route(closed, minutes + inst_.minutes(last, w), cost + inst_.cost(last, w), out);
    }
    if (static_cast<int>(path.size()) >= alpha + 1) return;
    for (CityId c = 1; c <= n_; ++c) {
      if (used[c]) continue;
      const double nm = minutes + inst_.minutes(path.back(), c);
      if (nm > inst_.params.max_tour_minutes + 1e-9) continue;
      used[c] = true;
      path.push_back(c);
      extend(path, used, nm, cost + inst_.cost(path[path.size() - 2], c), out);
      path.pop_back();
      used[c] = false;
    }
  }

  void add_route(const std::vector<CityId>& route, double minutes, double cost, std::vector<TourOption>& out) {
    const CityId cap = inst_.params.capital_id;
    if (minutes > inst_.params.max_tour_minutes + 1e-9) return;
    if (sc_.force_closed_at_capital && (route.front() != cap || route.back() != cap)) return;
    std::vector<CityId> nodes = route;
    if (nodes.size() >= 3 && nodes.front() == nodes.back()) nodes.pop_back();
    std::vector<CityId> sorted = nodes;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t k = sorted.size();
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<CityId> meets;
      double dur = minutes;
      int bigs = 0;
      for (std::size_t b = 0; b < k; ++b) {
        if (!(mask & (1u << b))) continue;
        const City& c = inst_.city(sorted[b]);
        meets.push_back(c.id);
        dur += c.meeting_minutes;
        bigs += c.size_class == SizeClass::big;
      }
      if (static_cast<int>(meets.size()) > sc_.max_meetings_per_day) continue;
      if (sc_.require_daily_meeting && meets.empty()) continue;
      if (bigs > 1) continue;
      if (dur > inst_.params.max_tour_minutes + 1e-9) continue;
      out.push_back(TourOption{route, meets, cost});
    }
  }

  double reward(CityId c, int t, int prev) const {
    const City& city = inst_.city(c);
    const double m = m_;
    const bool front = sc_.direction(inst_.params) == RewardDirection::front_loaded;
    const double K = inst_.params.repeat_depreciation;
    if (prev == 0) return front ? city.base_reward * (m - t + 1) / m : city.base_reward * (t + m) / m;
    if (!sc_.repeat_rewards()) return 0;
    const double s = t - prev;
    return front ? city.base_reward * ((m - t + 1) / m) * (s / (K * m))
                 : city.base_reward * s * (t + m) / (K * m * m);
  }

  static void append_encoding(Encoding& e, const TourOption& o) {
    e.insert(e.end(), o.route.begin(), o.route.end());
    e.push_back(-1);
    e.insert(e.end(), o.meetings.begin(), o.meetings.end());
    e.push_back(-2);
  }

  Best solve(int t, CityId w, int away, std::vector<std::vector<int>>& ledger) {
    if (t > m_) return Best{true, 0.0, {}, {}};
    std::vector<int> key{t, w, away};
    for (const auto& days : ledger) {
      key.push_back(-1);
      key.insert(key.end(), days.begin(), days.end());
    }
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    tick();

    const CityId cap = inst_.params.capital_id;
    const double cost_w = sc_.travel_cost_weight * inst_.params.cost_normalizer;
    Best best;
    for (const TourOption& o : options(w)) {
      tick();
      const CityId term = o.route.back();
      const int away2 = term == cap ? 0 : away + 1;
      if (sc_.kappa_enabled && away2 > sc_.kappa) continue;
      if (t == m_ && sc_.end_at_capital && term != cap) continue;
      bool cap_ok = true;
      double gain = -cost_w * o.travel_cost;
      for (CityId c : o.meetings) {
        const auto& d = ledger[c];
        if (static_cast<int>(d.size()) + 1 > sc_.meeting_caps.of(inst_.city(c).size_class)) { cap_ok = false; break; }
        gain += reward(c, t, d.empty() ? 0 : d.back());
      }
      if (!cap_ok) continue;
      for (CityId c : o.meetings) ledger[c].push_back(t);
      Best sub = solve(t + 1, term, away2, ledger);
      for (CityId c : o.meetings) ledger[c].pop_back();
      if (!sub.feasible) continue;
      const double value = gain + sub.value;
      Encoding enc;
      append_encoding(enc, o);
      enc.insert(enc.end(), sub.enc.begin(), sub.enc.end());
      const bool better = !best.feasible || value > best.value + 1e-9 ||
                          (value >= best.value - 1e-9 && enc < best.enc);
      if (!better) continue;
      best.feasible = true;
      best.value = value;
      best.days.assign(1, &o);
      best.days.insert(best.days.end(), sub.days.begin(), sub.days.end());
      best.enc = std::move(enc);
    }
    memo_.emplace(std::move(key), best);
    return best;
  }
};

} // namespace

OracleResult solve_exact(const Instance& inst, const ScenarioConfig& sc, const OracleLimits& limits) {
  if (inst.n() > limits.max_cities)
    throw LimitError("oracle refuses " + std::to_string(inst.n()) + " cities (limit " +
                     std::to_string(limits.max_cities) + ")");
  if (inst.params.days > limits.max_days)
    throw LimitError("oracle refuses " + std::to_string(inst.params.days) + " days (limit " +
                     std::to_string(limits.max_days) + ")");
  Solver solver(inst, sc, limits);
  return solver.run();
}

} // namespace mptpp
