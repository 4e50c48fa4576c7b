#include "mptpp/constructors.hpp"

#include <algorithm>
#include <chrono>
#include <limits>

#include "mptpp/error.hpp"
#include "mptpp/reward.hpp"

namespace mptpp {

namespace {

// Day-by-day construction state shared by both heuristics.
class Builder {
public:
  Builder(const Instance& inst, const ScenarioConfig& sc)
      : inst_(inst), sc_(sc), model_(RewardModel::from(inst, sc)), cap_(inst.params.capital_id),
        m_(inst.params.days), ledger_(static_cast<std::size_t>(inst.n()) + 1),
        routed_(static_cast<std::size_t>(inst.n()) + 1, false) {}

  const Instance& inst() const { return inst_; }
  CityId capital() const { return cap_; }
  int days() const { return m_; }
  Schedule& schedule() { return s_; }

  CityId wakeup(int t) const { return t == 1 ? cap_ : s_.day(t - 1).terminal(); }

  bool forced(int t) const {
    if (sc_.force_closed_at_capital) return true;
    if (sc_.end_at_capital && t == m_) return true;
    return sc_.kappa_enabled && t - last_cap_night_ >= sc_.kappa + 1;
  }

  int remaining(CityId c) const {
    return sc_.meeting_caps.of(inst_.city(c).size_class) - static_cast<int>(ledger_[c].size());
  }
  int last_meeting(CityId c) const { return ledger_[c].empty() ? 0 : ledger_[c].back(); }

  double reward(CityId c, int t) const {
    return meeting_reward(inst_.city(c), t, last_meeting(c), model_, sc_);
  }

  bool routed(CityId c) const { return routed_[c]; }
  void set_routed(CityId c, bool v) { routed_[c] = v; }

  // Single-day rules, ignoring the ones completed later in the day.
  bool local_ok(const DayTour& tour, int t) const {
    std::vector<Violation> vs;
    check_day_local(tour, t, inst_, sc_, vs);
    for (const Violation& v : vs)
      if (v.kind != ViolationKind::MinDailyMeetings && v.kind != ViolationKind::ClosedAtCapital) return false;
    int spare = 0;
    for (CityId c = 1; c <= inst_.n(); ++c) spare += std::max(remaining(c), 0);
    for (CityId c : tour.meetings) {
      if (remaining(c) < 1) return false;
      --spare;
    }
    // keep one meeting in reserve for every later day
    if (sc_.require_daily_meeting && spare < m_ - t) return false;
    return true;
  }

  bool has_big_meeting(const DayTour& tour) const {
    for (CityId c : tour.meetings)
      if (inst_.city(c).size_class == SizeClass::big) return true;
    return false;
  }

  // Tries a meeting at `c` on the tour; keeps it only if the day stays valid.
  bool try_meet(DayTour& tour, CityId c, int t) const {
    if (tour.meets(c) || remaining(c) < 1) return false;
    DayTour test = tour;
    test.meetings.push_back(c);
    normalize(test);
    if (!local_ok(test, t)) return false;
    tour = std::move(test);
    return true;
  }

  // Falls back through progressively more invasive options so that a day
  // holds at least one meeting when the scenario demands it.
  void ensure_meeting(DayTour& tour, int t, CityId& carried) {
    if (!sc_.require_daily_meeting || !tour.meetings.empty()) return;
    for (CityId c : tour.route)
      if (try_meet(tour, c, t)) return;
    if (t >= 2) {
      DayTour& prev = s_.days[static_cast<std::size_t>(t - 2)];
      const CityId w = tour.wakeup();
      if (prev.meets(w) && prev.meetings.size() >= 2) {
        DayTour test = tour;
        test.meetings.push_back(w);
        normalize(test);
        ledger_[w].pop_back();
        if (local_ok(test, t)) {
          prev.meetings.erase(std::find(prev.meetings.begin(), prev.meetings.end(), w));
          tour = std::move(test);
          return;
        }
        ledger_[w].push_back(t - 1);
      }
    }
    const CityId w = tour.wakeup();
    std::vector<CityId> order;
    for (CityId c = 1; c <= inst_.n(); ++c)
      if (c != w && remaining(c) >= 1) order.push_back(c);
    std::stable_sort(order.begin(), order.end(),
                     [&](CityId a, CityId b) { return inst_.minutes(w, a) < inst_.minutes(w, b); });
    for (CityId c : order) {
      DayTour test{{w, c}, {c}};
      if (forced(t) && c != cap_) test.route.push_back(cap_);
      if (!local_ok(test, t)) continue;
      for (CityId x : tour.route)
        if (x != w && !test.visits(x)) set_routed(x, false);
      set_routed(c, true);
      carried = 0;
      tour = std::move(test);
      return;
    }
    throw ConstructionError("no meeting can be scheduled on day " + std::to_string(t));
  }

  void commit(DayTour tour, int t) {
    normalize(tour);
    for (CityId c : tour.meetings) ledger_[c].push_back(t);
    for (CityId c : tour.route) routed_[c] = true;
    if (tour.terminal() == cap_) last_cap_night_ = t;
    s_.days.push_back(std::move(tour));
  }

  Schedule finish(const char* who) {
    const auto vs = check_feasibility(s_, inst_, sc_);
    if (!vs.empty()) throw ConstructionError(std::string(who) + " produced " + vs.front().render());
    return s_;
  }

private:
  const Instance& inst_;
  const ScenarioConfig& sc_;
  RewardModel model_;
  CityId cap_;
  int m_;
  Schedule s_;
  std::vector<std::vector<int>> ledger_;
  std::vector<bool> routed_;
  int last_cap_night_ = 0;
};

// Closes a forced day at the capital, dropping appended cities from the
// right until the day fits.
void close_at_capital(Builder& b, DayTour& tour, int t) {
  const CityId cap = b.capital();
  if (tour.terminal() != cap) tour.route.push_back(cap);
  while (!b.local_ok(tour, t) && tour.route.size() > 2) {
    const CityId drop = tour.route[tour.route.size() - 2];
    tour.route.erase(tour.route.end() - 2);
    auto it = std::find(tour.meetings.begin(), tour.meetings.end(), drop);
    if (it != tour.meetings.end()) tour.meetings.erase(it);
    b.set_routed(drop, false);
    if (tour.route.size() == 2 && tour.route[0] == cap && tour.route[1] == cap) tour.route.pop_back();
  }
  if (!b.local_ok(tour, t))
    throw ConstructionError("cannot return to the capital on day " + std::to_string(t));
}

} // namespace

Schedule shrc(const Instance& inst, const ScenarioConfig& sc, Rng& rng) {
  Builder b(inst, sc);
  const CityId cap = b.capital();
  CityId carried = 0;
  for (int t = 1; t <= b.days(); ++t) {
    const CityId wake = b.wakeup(t);
    const bool forced = b.forced(t);
    DayTour tour{{wake}, {}};
    if (t == 1 || carried == wake) b.try_meet(tour, wake, t);
    carried = 0;
    std::vector<bool> skipped(static_cast<std::size_t>(inst.n()) + 1, false);
    while (true) {
      std::vector<CityId> pool;
      std::vector<double> weights;
      const bool big_taken = b.has_big_meeting(tour);
      for (CityId c = 1; c <= inst.n(); ++c) {
        if (b.routed(c) || tour.visits(c) || skipped[c] || b.remaining(c) < 1) continue;
        if (big_taken && inst.city(c).size_class == SizeClass::big) continue;
        const double w = b.reward(c, t);
        if (w <= 0) continue;
        pool.push_back(c);
        weights.push_back(w);
      }
      if (pool.empty()) break;
      const CityId i = pool[rng.roulette(weights)];
      DayTour cand = tour;
      cand.route.push_back(i);
      cand.meetings.push_back(i);
      normalize(cand);
      DayTour test = cand;
      if (forced && i != cap) test.route.push_back(cap);
      if (b.local_ok(test, t)) {
        tour = std::move(cand);
        b.set_routed(i, true);
        continue;
      }
      if (!forced && t < b.days()) {
        DayTour end = tour;
        end.route.push_back(i);
        if (b.local_ok(end, t)) {
          tour = std::move(end);
          b.set_routed(i, true);
          carried = i;
        }
      }
      break;
    }
    if (forced) {
      close_at_capital(b, tour, t);
      if (tour.terminal() == cap) b.try_meet(tour, cap, t);
    }
    b.ensure_meeting(tour, t, carried);
    b.commit(std::move(tour), t);
  }
  return b.finish("shrc");
}

Schedule escc(const Instance& inst, const ScenarioConfig& sc, const ConstructorConfig& cfg,
              std::vector<EsccDayTrace>* trace) {
  if (cfg.tour_size_cap < 2) throw DomainError("tour_size_cap must be at least 2");
  if (!(cfg.max_time_init > 0)) throw DomainError("max_time_init must be positive");
  Builder b(inst, sc);
  const CityId cap = b.capital();
  CityId carried = 0;
  for (int t = 1; t <= b.days(); ++t) {
    const CityId wake = b.wakeup(t);
    const bool forced = b.forced(t);
    EsccDayTrace day_trace;

    std::vector<std::pair<double, CityId>> ranked;
    for (CityId c = 1; c <= inst.n(); ++c) {
      if (c == wake || b.remaining(c) < 1) continue;
      const double r = b.reward(c, t);
      if (r > 0) ranked.emplace_back(r, c);
    }
    std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
      if (x.first != y.first) return x.first > y.first;
      return x.second < y.second;
    });
    std::vector<CityId> top;
    bool big = false;
    for (const auto& [r, c] : ranked) {
      day_trace.ranked.push_back(c);
      day_trace.rewards.push_back(r);
      if (static_cast<int>(top.size()) >= cfg.tour_size_cap - 1) continue;
      const bool is_big = inst.city(c).size_class == SizeClass::big;
      if (is_big && big) continue;
      big = big || is_big;
      top.push_back(c);
    }
    day_trace.candidates = top;

    // The capital closes a forced day; it is not permuted.
    const bool fixed_cap = forced;
    std::vector<CityId> perm;
    for (CityId c : top)
      if (!(fixed_cap && c == cap)) perm.push_back(c);
    std::sort(perm.begin(), perm.end());
    auto route_cost = [&](const std::vector<CityId>& p) {
      double cost = 0;
      CityId at = wake;
      for (CityId c : p) { cost += inst.cost(at, c); at = c; }
      if (fixed_cap && at != cap) cost += inst.cost(at, cap);
      return cost;
    };
    std::vector<CityId> best = perm;
    double best_cost = std::numeric_limits<double>::infinity();
    const auto start = std::chrono::steady_clock::now();
    do {
      ++day_trace.permutations;
      const double c = route_cost(perm);
      if (c < best_cost) { best_cost = c; best = perm; }
      const double el = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (el > cfg.max_time_init) break;
    } while (std::next_permutation(perm.begin(), perm.end()));

    auto build = [&](std::size_t keep) {
      DayTour tour{{wake}, {}};
      for (std::size_t k = 0; k < keep; ++k) {
        tour.route.push_back(best[k]);
        tour.meetings.push_back(best[k]);
      }
      if (fixed_cap && (tour.route.size() > 1 || wake != cap)) tour.route.push_back(cap);
      normalize(tour);
      return tour;
    };
    std::size_t keep = best.size();
    DayTour tour = build(keep);
    while (keep > 0 && !b.local_ok(tour, t)) tour = build(--keep);
    if (!b.local_ok(tour, t)) throw ConstructionError("escc cannot close day " + std::to_string(t));
    if (fixed_cap && tour.terminal() == cap && tour.route.size() > 1) b.try_meet(tour, cap, t);
    for (CityId c : tour.route) b.set_routed(c, true);
    b.ensure_meeting(tour, t, carried);
    b.commit(std::move(tour), t);
    if (trace) trace->push_back(std::move(day_trace));
  }
  return b.finish("escc");
}

} // namespace mptpp
