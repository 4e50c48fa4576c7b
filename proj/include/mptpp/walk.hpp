#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "mptpp/schedule.hpp"

namespace mptpp {

// The schedule as one continuous walk: day d covers positions
// [start(d), night[d]]; consecutive days share the overnight position.
// A single-city day has start(d) == night[d].
struct Walk {
  std::vector<CityId> nodes;
  std::vector<int> night; // 0-based day -> index of its terminal

  static Walk from(const Schedule& s);

  int m() const { return static_cast<int>(night.size()); }
  int size() const { return static_cast<int>(nodes.size()); }
  int start(int d) const { return d == 0 ? 0 : night[static_cast<std::size_t>(d - 1)]; }
  // Inclusive range of 0-based days containing position p.
  std::pair<int, int> days_of(int p) const;
  std::vector<CityId> route(int d) const;
};

struct WalkEdit {
  Walk walk;
  std::vector<int> days; // changed 0-based days, ascending
};

std::optional<WalkEdit> edit_swap(const Walk& w, int p, int q);
std::optional<WalkEdit> edit_remove(const Walk& w, int p);
std::optional<WalkEdit> edit_replace(const Walk& w, int p, CityId u);
// Inserts between positions p-1 and p of the same day.
std::optional<WalkEdit> edit_insert_gap(const Walk& w, int p, CityId x);
// Appends x as the new terminal of day d.
std::optional<WalkEdit> edit_extend(const Walk& w, int d, CityId x);
// Turns single-city day d at b into the closed tour b -> x -> b.
std::optional<WalkEdit> edit_excursion(const Walk& w, int d, CityId x);

// Applies `second` (an edit of first.walk) on top of `first`.
WalkEdit compose(const WalkEdit& first, WalkEdit second);

struct InsertSite {
  enum class Kind { Gap, Extend, Excursion } kind;
  int where = 0;   // position for Gap, day for Extend/Excursion
  int day = 0;     // day receiving the new city
  CityId j = 0;    // predecessor
  CityId k = 0;    // successor, 0 when the walk ends
};

// All insertion sites on days not listed in `skip_days`.
std::vector<InsertSite> insert_sites(const Walk& w, const std::vector<int>& skip_days = {});

std::optional<WalkEdit> apply_site(const Walk& w, const InsertSite& site, CityId x);

} // namespace mptpp
