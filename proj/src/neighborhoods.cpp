#include <algorithm>
#include <numeric>

#include "mptpp/search.hpp"

namespace mptpp {

namespace {

constexpr double kEps = 1e-9;

bool on_route(const std::vector<CityId>& r, CityId c) { return std::find(r.begin(), r.end(), c) != r.end(); }

// True when x lost a meeting because it left a changed day's route.
bool orphaned(const SearchState& st, const WalkEdit& e, CityId x) {
  for (int d : e.days)
    if (st.schedule().days[static_cast<std::size_t>(d)].meets(x) && !on_route(e.walk.route(d), x)) return true;
  return false;
}

struct Priced {
  MoveCandidate mv;
  bool ok = false;
};

// Builds the changed day tours for an edit, keeping surviving meetings. Each
// carrier city may keep its meetings, drop them, or hold a single meeting on
// one changed day it visits. With `refill`, one further meeting at any unmet
// route city may be added.
Priced price(const SearchState& st, const WalkEdit& e, std::vector<CityId> carriers, MoveKind kind,
             bool refill = false) {
  constexpr int kKeep = -2, kStrip = -1;
  Priced out;
  const auto& sched = st.schedule();
  std::vector<DayTour> base;
  for (int d : e.days) {
    DayTour t;
    t.route = e.walk.route(d);
    for (CityId c : sched.days[static_cast<std::size_t>(d)].meetings)
      if (on_route(t.route, c)) t.meetings.push_back(c);
    base.push_back(std::move(t));
  }
  std::sort(carriers.begin(), carriers.end());
  carriers.erase(std::unique(carriers.begin(), carriers.end()), carriers.end());
  std::vector<std::vector<int>> options;
  for (CityId c : carriers) {
    std::vector<int> met;
    for (std::size_t k = 0; k < base.size(); ++k)
      if (base[k].meets(c)) met.push_back(static_cast<int>(k));
    std::vector<int> o{kKeep};
    if (!met.empty()) o.push_back(kStrip);
    for (std::size_t k = 0; k < base.size(); ++k) {
      if (!on_route(base[k].route, c)) continue;
      if (met.size() == 1 && met[0] == static_cast<int>(k)) continue;
      o.push_back(static_cast<int>(k));
    }
    options.push_back(std::move(o));
  }
  std::vector<std::pair<int, CityId>> extra{{-1, 0}};
  if (refill)
    for (std::size_t k = 0; k < base.size(); ++k)
      for (CityId c : base[k].route)
        if (!base[k].meets(c) && !std::binary_search(carriers.begin(), carriers.end(), c) &&
            std::find(extra.begin(), extra.end(), std::pair<int, CityId>{static_cast<int>(k), c}) == extra.end())
          extra.emplace_back(static_cast<int>(k), c);

  std::vector<std::size_t> pick(carriers.size() + 1, 0);
  std::vector<DayTour> tours;
  while (true) {
    tours = base;
    for (std::size_t i = 0; i < carriers.size(); ++i) {
      const int opt = options[i][pick[i]];
      if (opt == kKeep) continue;
      for (auto& t : tours) {
        auto it = std::find(t.meetings.begin(), t.meetings.end(), carriers[i]);
        if (it != t.meetings.end()) t.meetings.erase(it);
      }
      if (opt >= 0) tours[static_cast<std::size_t>(opt)].meetings.push_back(carriers[i]);
    }
    bool clash = false;
    if (const auto& [k, c] = extra[pick.back()]; k >= 0) {
      auto& mt = tours[static_cast<std::size_t>(k)].meetings;
      clash = std::find(mt.begin(), mt.end(), c) != mt.end();
      mt.push_back(c);
    }
    if (!clash) {
      for (auto& t : tours) std::sort(t.meetings.begin(), t.meetings.end());
      const auto ev = st.evaluate(e.days, tours);
      if (ev.feasible && (!out.ok || ev.delta > out.mv.delta + kEps)) {
        out.ok = true;
        out.mv.delta = ev.delta;
        out.mv.after = tours;
      }
    }
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      const std::size_t n = i < carriers.size() ? options[i].size() : extra.size();
      if (++pick[i] < n) break;
      pick[i] = 0;
    }
    if (i == pick.size()) break;
  }
  if (out.ok) {
    out.mv.kind = kind;
    out.mv.days = e.days;
    for (int d : e.days) out.mv.before.push_back(sched.days[static_cast<std::size_t>(d)]);
  }
  return out;
}

void keep_best(std::optional<MoveCandidate>& best, Priced&& p) {
  if (!p.ok || p.mv.delta <= kEps) return;
  if (!best || p.mv.delta > best->delta + kEps) best = std::move(p.mv);
}

bool days_overlap(const Walk& w, int p, int q) {
  const auto a = w.days_of(p), b = w.days_of(q);
  return a.first <= b.second && b.first <= a.second;
}

std::optional<MoveCandidate> swaps(const SearchState& st, bool intra) {
  const Walk& w = st.walk();
  std::optional<MoveCandidate> best;
  for (int p = 1; p < w.size(); ++p)
    for (int q = p + 1; q < w.size(); ++q) {
      if (days_overlap(w, p, q) != intra) continue;
      const auto e = edit_swap(w, p, q);
      if (!e) continue;
      keep_best(best, price(st, *e, {w.nodes[p], w.nodes[q]}, intra ? MoveKind::swap_intra : MoveKind::swap_inter));
    }
  return best;
}

// Moves, adds or removes the meeting of the city at position p across the days sharing p.
std::optional<MoveCandidate> reattribute(const SearchState& st) {
  const Walk& w = st.walk();
  const auto& sched = st.schedule();
  std::optional<MoveCandidate> best;
  for (int p = 0; p < w.size(); ++p) {
    const CityId c = w.nodes[p];
    const auto [lo, hi] = w.days_of(p);
    const int span = hi - lo + 1;
    unsigned current = 0;
    for (int d = lo; d <= hi; ++d)
      if (sched.days[static_cast<std::size_t>(d)].meets(c)) current |= 1u << (d - lo);
    std::vector<unsigned> masks;
    if (span <= 3) {
      for (unsigned mk = 0; mk < (1u << span); ++mk) masks.push_back(mk);
    } else {
      masks.push_back(0);
      for (int b = 0; b < span; ++b) masks.push_back(1u << b);
    }
    for (unsigned mk : masks) {
      if (mk == current) continue;
      MoveCandidate mv;
      mv.kind = MoveKind::reattribute;
      for (int d = lo; d <= hi; ++d) {
        const DayTour& old = sched.days[static_cast<std::size_t>(d)];
        const bool want = (mk >> (d - lo)) & 1u;
        if (want == old.meets(c)) continue;
        DayTour t = old;
        if (want) {
          t.meetings.push_back(c);
          std::sort(t.meetings.begin(), t.meetings.end());
        } else {
          t.meetings.erase(std::find(t.meetings.begin(), t.meetings.end(), c));
        }
        mv.days.push_back(d);
        mv.before.push_back(old);
        mv.after.push_back(std::move(t));
      }
      const auto ev = st.evaluate(mv.days, mv.after);
      if (!ev.feasible) continue;
      mv.delta = ev.delta;
      keep_best(best, Priced{std::move(mv), true});
    }
  }
  // same-day exchange: meet c_in instead of c_out
  for (int d = 0; d < sched.m(); ++d) {
    const DayTour& old = sched.days[static_cast<std::size_t>(d)];
    std::vector<CityId> unmet;
    for (CityId c : old.route)
      if (!old.meets(c) && std::find(unmet.begin(), unmet.end(), c) == unmet.end()) unmet.push_back(c);
    for (CityId out : old.meetings)
      for (CityId in : unmet) {
        DayTour t = old;
        *std::find(t.meetings.begin(), t.meetings.end(), out) = in;
        std::sort(t.meetings.begin(), t.meetings.end());
        MoveCandidate mv;
        mv.kind = MoveKind::reattribute;
        mv.days = {d};
        mv.before = {old};
        mv.after = {std::move(t)};
        const auto ev = st.evaluate(mv.days, mv.after);
        if (!ev.feasible) continue;
        mv.delta = ev.delta;
        keep_best(best, Priced{std::move(mv), true});
      }
  }
  return best;
}

// Cities that can still take a meeting: never met, or met fewer times than their cap.
bool available(const SearchState& st, CityId c) {
  const auto& city = st.instance().city(c);
  int met = 0;
  for (const DayTour& d : st.schedule().days) met += d.meets(c) ? 1 : 0;
  return met < st.scenario().meeting_caps.of(city.size_class);
}

// Highest base reward among available cities; `unrouted` narrows to cities off the walk.
CityId best_available(const SearchState& st, CityId exclude, bool unrouted = false) {
  const Instance& inst = st.instance();
  CityId best = 0;
  for (const City& c : inst.cities) {
    if (c.id == exclude || !available(st, c.id) || (unrouted && st.routed(c.id))) continue;
    if (best == 0 || c.base_reward > inst.city(best).base_reward) best = c.id;
  }
  return best;
}

double insertion_cost(const Instance& inst, const InsertSite& s, CityId u) {
  switch (s.kind) {
  case InsertSite::Kind::Gap: return inst.cost(s.j, u) + inst.cost(u, s.k) - inst.cost(s.j, s.k);
  case InsertSite::Kind::Extend:
    return inst.cost(s.j, u) + (s.k == 0 ? 0.0 : inst.cost(u, s.k) - inst.cost(s.j, s.k));
  case InsertSite::Kind::Excursion: return inst.cost(s.j, u) + inst.cost(u, s.j);
  }
  return 0;
}

// Cheapest feasible insertion of u into `base` (on days not in skip), pricing
// the combined edit `prefix` + insertion. Carriers get the usual options.
Priced cheapest_insertion(const SearchState& st, const WalkEdit& prefix, CityId u,
                          const std::vector<int>& skip, std::vector<CityId> carriers, MoveKind kind,
                          std::optional<double> lambda, bool refill = false) {
  const Instance& inst = st.instance();
  auto sites = insert_sites(prefix.walk, skip);
  std::vector<std::pair<double, std::size_t>> order;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    if (lambda && !granular_admissible(inst, u, sites[i].j, sites[i].k, *lambda)) continue;
    order.emplace_back(insertion_cost(inst, sites[i], u), i);
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  carriers.push_back(u);
  for (const auto& [cost, i] : order) {
    (void)cost;
    auto e = apply_site(prefix.walk, sites[i], u);
    if (!e) continue;
    auto p = price(st, compose(prefix, std::move(*e)), carriers, kind, refill);
    if (p.ok) return p;
  }
  return {};
}

// Best improving insertion of u over every admissible site, for the descent.
void best_insertion(std::optional<MoveCandidate>& best, const SearchState& st, const WalkEdit& prefix, CityId u,
                    std::optional<double> lambda, bool refill) {
  const Instance& inst = st.instance();
  const auto sites = insert_sites(prefix.walk, {});
  for (const auto& site : sites) {
    if (lambda && !granular_admissible(inst, u, site.j, site.k, *lambda)) continue;
    auto e = apply_site(prefix.walk, site, u);
    if (!e) continue;
    keep_best(best, price(st, compose(prefix, std::move(*e)), {u}, MoveKind::drop_add, refill));
  }
}

std::optional<MoveCandidate> drop_add(const SearchState& st, std::optional<double> lambda) {
  const Walk& w = st.walk();
  std::optional<MoveCandidate> best;
  // the best available city, and the best unrouted one when that differs
  auto insert_best = [&](const WalkEdit& base, CityId dropped, bool refill) {
    const CityId a = best_available(st, dropped), b = best_available(st, dropped, true);
    if (a != 0) best_insertion(best, st, base, a, lambda, refill);
    if (b != 0 && b != a) best_insertion(best, st, base, b, lambda, refill);
  };
  insert_best(WalkEdit{w, {}}, 0, false);
  for (int p = 1; p < w.size(); ++p) {
    const auto e1 = edit_remove(w, p);
    if (!e1) continue;
    insert_best(*e1, w.nodes[p], true);
    keep_best(best, price(st, *e1, {}, MoveKind::drop_add, true));
  }
  return best;
}

std::optional<MoveCandidate> replace_unrouted(const SearchState& st, std::optional<double> lambda) {
  const Instance& inst = st.instance();
  const Walk& w = st.walk();
  std::optional<MoveCandidate> best;
  for (int p = 1; p < w.size(); ++p) {
    const CityId j = w.nodes[p - 1];
    const CityId k = p + 1 < w.size() ? w.nodes[p + 1] : 0;
    for (const City& c : inst.cities) {
      if (!available(st, c.id)) continue;
      if (lambda && !granular_admissible(inst, c.id, j, k, *lambda)) continue;
      const auto e = edit_replace(w, p, c.id);
      if (!e) continue;
      keep_best(best, price(st, *e, {c.id}, MoveKind::replace));
    }
  }
  return best;
}

} // namespace

std::optional<MoveCandidate> best_move(SearchState& st, int k, std::optional<double> lambda) {
  switch (k) {
  case 1: return swaps(st, false);
  case 2: return drop_add(st, lambda);
  case 3: return replace_unrouted(st, lambda);
  case 4: {
    auto a = swaps(st, true);
    auto b = reattribute(st);
    if (b && (!a || b->delta > a->delta + kEps)) return b;
    return a;
  }
  default: return std::nullopt;
  }
}

// ---------------------------------------------------------------- perturbation

namespace {

std::optional<WalkEdit> random_swap(const Walk& w, Rng& rng) {
  const auto movable = static_cast<std::uint64_t>(w.size() - 1);
  const int p = 1 + static_cast<int>(rng.below(movable));
  const int q = 1 + static_cast<int>(rng.below(movable));
  return edit_swap(w, p, q);
}

Priced try_swap2(const SearchState& st, Rng& rng) {
  const Walk& w = st.walk();
  auto e1 = random_swap(w, rng);
  if (!e1) return {};
  auto e2 = random_swap(e1->walk, rng);
  if (!e2) return {};
  const WalkEdit e = compose(*e1, std::move(*e2));
  std::vector<CityId> carriers;
  for (CityId x : w.nodes)
    if (orphaned(st, e, x)) carriers.push_back(x);
  return price(st, e, carriers, MoveKind::perturb_swap2);
}

Priced try_replace2(const SearchState& st, Rng& rng, const std::vector<CityId>& pool) {
  const Walk& w = st.walk();
  std::vector<std::pair<double, int>> value;
  for (int p = 1; p < w.size(); ++p) {
    const auto [lo, hi] = w.days_of(p);
    double v = 0;
    for (int d = lo; d <= hi; ++d) v += st.meeting_value(w.nodes[p], d);
    value.emplace_back(v, p);
  }
  std::stable_sort(value.begin(), value.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  int p1 = -1, p2 = -1;
  for (const auto& [v, p] : value) {
    (void)v;
    if (p1 < 0) p1 = p;
    else if (w.nodes[p] != w.nodes[p1]) { p2 = p; break; }
  }
  if (p2 < 0) return {};
  const auto i1 = rng.below(pool.size());
  auto i2 = rng.below(pool.size() - 1);
  if (i2 >= i1) ++i2;
  const CityId u1 = pool[i1], u2 = pool[i2];
  auto e1 = edit_replace(w, p1, u1);
  if (!e1) return {};
  auto e2 = edit_replace(e1->walk, p2, u2);
  if (!e2) return {};
  return price(st, compose(*e1, std::move(*e2)), {u1, u2}, MoveKind::perturb_replace2);
}

Priced try_relocate(const SearchState& st, Rng& rng, std::optional<double> lambda) {
  const Walk& w = st.walk();
  const int p = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(w.size() - 1)));
  const CityId x = w.nodes[p];
  auto e1 = edit_remove(w, p);
  if (!e1) return {};
  const auto [lo, hi] = w.days_of(p);
  std::vector<int> skip;
  for (int d = lo; d <= hi; ++d) skip.push_back(d);
  if (static_cast<int>(skip.size()) == w.m()) return {};
  return cheapest_insertion(st, *e1, x, skip, {}, MoveKind::perturb_relocate, lambda);
}

} // namespace

std::optional<MoveCandidate> perturb(SearchState& st, Rng& rng, double lambda, int attempts) {
  const Instance& inst = st.instance();
  const Walk& w = st.walk();
  std::vector<CityId> pool;
  for (const City& c : inst.cities)
    if (!st.routed(c.id)) pool.push_back(c.id);
  std::vector<CityId> movable(w.nodes.begin() + 1, w.nodes.end());
  std::sort(movable.begin(), movable.end());
  const auto distinct = std::unique(movable.begin(), movable.end()) - movable.begin();

  std::vector<MoveKind> kinds;
  if (distinct >= 2) kinds.push_back(MoveKind::perturb_swap2);
  if (distinct >= 2 && pool.size() >= 2) kinds.push_back(MoveKind::perturb_replace2);
  if (w.size() >= 2 && w.m() >= 2) kinds.push_back(MoveKind::perturb_relocate);
  if (kinds.empty()) return std::nullopt;

  for (int a = 0; a < attempts; ++a) {
    Priced got;
    switch (kinds[rng.below(kinds.size())]) {
    case MoveKind::perturb_swap2: got = try_swap2(st, rng); break;
    case MoveKind::perturb_replace2: got = try_replace2(st, rng, pool); break;
    default: got = try_relocate(st, rng, lambda); break;
    }
    if (got.ok) return std::move(got.mv);
  }
  return std::nullopt;
}

} // namespace mptpp
