#include "mptpp/walk.hpp"

#include <algorithm>

namespace mptpp {

Walk Walk::from(const Schedule& s) {
  Walk w;
  for (int d = 0; d < s.m(); ++d) {
    const auto& r = s.days[static_cast<std::size_t>(d)].route;
    const std::size_t skip = d == 0 ? 0 : 1;
    w.nodes.insert(w.nodes.end(), r.begin() + static_cast<long>(skip), r.end());
    w.night.push_back(w.size() - 1);
  }
  return w;
}

std::pair<int, int> Walk::days_of(int p) const {
  const auto it = std::lower_bound(night.begin(), night.end(), p);
  const int lo = static_cast<int>(it - night.begin());
  int hi = lo;
  while (hi + 1 < m() && start(hi + 1) <= p) ++hi;
  return {lo, hi};
}

std::vector<CityId> Walk::route(int d) const {
  return std::vector<CityId>(nodes.begin() + start(d), nodes.begin() + night[static_cast<std::size_t>(d)] + 1);
}

namespace {

bool adjacent_ok(const Walk& w, int p) {
  if (p > 0 && p < w.size() && w.nodes[p - 1] == w.nodes[p]) return false;
  if (p >= 0 && p + 1 < w.size() && w.nodes[p] == w.nodes[p + 1]) return false;
  return true;
}

std::vector<int> range_days(const Walk& w, int p) {
  const auto [lo, hi] = w.days_of(p);
  std::vector<int> out;
  for (int d = lo; d <= hi; ++d) out.push_back(d);
  return out;
}

void merge_days(std::vector<int>& a, const std::vector<int>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
}

} // namespace

std::optional<WalkEdit> edit_swap(const Walk& w, int p, int q) {
  if (p <= 0 || q <= 0 || p == q || p >= w.size() || q >= w.size()) return std::nullopt;
  if (w.nodes[p] == w.nodes[q]) return std::nullopt;
  WalkEdit e{w, range_days(w, p)};
  merge_days(e.days, range_days(w, q));
  std::swap(e.walk.nodes[p], e.walk.nodes[q]);
  if (!adjacent_ok(e.walk, p) || !adjacent_ok(e.walk, q)) return std::nullopt;
  return e;
}

std::optional<WalkEdit> edit_remove(const Walk& w, int p) {
  if (p <= 0 || p >= w.size()) return std::nullopt;
  WalkEdit e{w, range_days(w, p)};
  e.walk.nodes.erase(e.walk.nodes.begin() + p);
  for (int& n : e.walk.night)
    if (n >= p) --n;
  if (p < e.walk.size() && !adjacent_ok(e.walk, p)) return std::nullopt;
  return e;
}

std::optional<WalkEdit> edit_replace(const Walk& w, int p, CityId u) {
  if (p <= 0 || p >= w.size() || w.nodes[p] == u) return std::nullopt;
  WalkEdit e{w, range_days(w, p)};
  e.walk.nodes[p] = u;
  if (!adjacent_ok(e.walk, p)) return std::nullopt;
  return e;
}

std::optional<WalkEdit> edit_insert_gap(const Walk& w, int p, CityId x) {
  if (p <= 0 || p >= w.size()) return std::nullopt;
  const auto [lo, hi] = w.days_of(p);
  (void)hi;
  if (w.start(lo) > p - 1) return std::nullopt; // arc p-1 -> p crosses no day
  WalkEdit e{w, {lo}};
  e.walk.nodes.insert(e.walk.nodes.begin() + p, x);
  for (int& n : e.walk.night)
    if (n >= p) ++n;
  if (!adjacent_ok(e.walk, p)) return std::nullopt;
  return e;
}

std::optional<WalkEdit> edit_extend(const Walk& w, int d, CityId x) {
  if (d < 0 || d >= w.m()) return std::nullopt;
  const int q = w.night[static_cast<std::size_t>(d)];
  WalkEdit e{w, {d}};
  // later days starting at the old terminal now start at x
  for (int t = d + 1; t < w.m(); ++t) {
    e.days.push_back(t);
    if (w.night[static_cast<std::size_t>(t)] > q) break;
  }
  e.walk.nodes.insert(e.walk.nodes.begin() + q + 1, x);
  for (int t = 0; t < w.m(); ++t) {
    int& n = e.walk.night[static_cast<std::size_t>(t)];
    if (t >= d && n >= q) ++n;
  }
  if (!adjacent_ok(e.walk, q + 1)) return std::nullopt;
  return e;
}

std::optional<WalkEdit> edit_excursion(const Walk& w, int d, CityId x) {
  if (d < 0 || d >= w.m()) return std::nullopt;
  const int q = w.night[static_cast<std::size_t>(d)];
  if (w.start(d) != q || w.nodes[q] == x) return std::nullopt;
  WalkEdit e{w, {d}};
  const CityId b = w.nodes[q];
  e.walk.nodes.insert(e.walk.nodes.begin() + q + 1, {x, b});
  for (int t = d; t < w.m(); ++t) e.walk.night[static_cast<std::size_t>(t)] += 2;
  return e;
}

WalkEdit compose(const WalkEdit& first, WalkEdit second) {
  merge_days(second.days, first.days);
  return second;
}

std::vector<InsertSite> insert_sites(const Walk& w, const std::vector<int>& skip_days) {
  std::vector<InsertSite> out;
  for (int d = 0; d < w.m(); ++d) {
    if (std::find(skip_days.begin(), skip_days.end(), d) != skip_days.end()) continue;
    const int s = w.start(d), q = w.night[static_cast<std::size_t>(d)];
    for (int p = s + 1; p <= q; ++p) out.push_back({InsertSite::Kind::Gap, p, d, w.nodes[p - 1], w.nodes[p]});
    const CityId next = q + 1 < w.size() ? w.nodes[q + 1] : 0;
    out.push_back({InsertSite::Kind::Extend, d, d, w.nodes[q], next});
    if (s == q) out.push_back({InsertSite::Kind::Excursion, d, d, w.nodes[q], w.nodes[q]});
  }
  return out;
}

std::optional<WalkEdit> apply_site(const Walk& w, const InsertSite& site, CityId x) {
  switch (site.kind) {
  case InsertSite::Kind::Gap: return edit_insert_gap(w, site.where, x);
  case InsertSite::Kind::Extend: return edit_extend(w, site.where, x);
  case InsertSite::Kind::Excursion: return edit_excursion(w, site.where, x);
  }
  return std::nullopt;
}

} // namespace mptpp
