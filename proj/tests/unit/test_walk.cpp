#include <doctest.h>

#include "fixtures.hpp"
#include "mptpp/constructors.hpp"
#include "mptpp/walk.hpp"

using namespace mptpp;
using fixtures::day;

namespace {

Schedule mixed() {
  // open, single-city, single-city, closed
  Schedule s;
  s.days = {day({1, 2, 3}, {2, 3}), day({3}, {3}), day({3}, {}), day({3, 4, 3}, {4})};
  return s;
}

// Days of the walk not listed in `changed` must read exactly as before.
void check_untouched(const Walk& before, const WalkEdit& e) {
  for (int d = 0; d < before.m(); ++d) {
    if (std::find(e.days.begin(), e.days.end(), d) != e.days.end()) continue;
    CHECK(e.walk.route(d) == before.route(d));
  }
}

} // namespace

TEST_CASE("walk round trip") {
  const Schedule s = mixed();
  const Walk w = Walk::from(s);
  CHECK(w.nodes == std::vector<CityId>{1, 2, 3, 4, 3});
  CHECK(w.night == std::vector<int>{2, 2, 2, 4});
  for (int d = 0; d < s.m(); ++d) CHECK(w.route(d) == s.days[static_cast<std::size_t>(d)].route);
  CHECK(w.days_of(0) == std::pair{0, 0});
  CHECK(w.days_of(1) == std::pair{0, 0});
  CHECK(w.days_of(2) == std::pair{0, 3});
  CHECK(w.days_of(3) == std::pair{3, 3});

  const Schedule t = fixtures::turkey_tours();
  const Walk wt = Walk::from(t);
  for (int d = 0; d < t.m(); ++d) CHECK(wt.route(d) == t.days[static_cast<std::size_t>(d)].route);
}

TEST_CASE("edits on a hand walk") {
  const Walk w = Walk::from(mixed());
  SUBCASE("extend a single-city day moves the later overnights") {
    const auto e = edit_extend(w, 1, 5);
    REQUIRE(e);
    CHECK(e->days == std::vector<int>{1, 2, 3});
    CHECK(e->walk.route(1) == std::vector<CityId>{3, 5});
    CHECK(e->walk.route(2) == std::vector<CityId>{5});
    CHECK(e->walk.route(3) == std::vector<CityId>{5, 4, 3});
    CHECK(e->walk.route(0) == w.route(0));
  }
  SUBCASE("excursion closes a single-city day") {
    const auto e = edit_excursion(w, 2, 6);
    REQUIRE(e);
    CHECK(e->days == std::vector<int>{2});
    CHECK(e->walk.route(2) == std::vector<CityId>{3, 6, 3});
    CHECK(e->walk.route(3) == w.route(3));
    CHECK_FALSE(edit_excursion(w, 0, 6));
  }
  SUBCASE("removing an overnight city repairs the next day") {
    const auto e = edit_remove(w, 2);
    REQUIRE(e);
    CHECK(e->walk.route(0) == std::vector<CityId>{1, 2});
    CHECK(e->walk.route(1) == std::vector<CityId>{2});
    CHECK(e->walk.route(3) == std::vector<CityId>{2, 4, 3});
  }
  SUBCASE("swap rejects self loops and the start") {
    CHECK_FALSE(edit_swap(w, 0, 1));
    CHECK_FALSE(edit_swap(w, 2, 4)); // same city
    const auto e = edit_swap(w, 1, 3);
    REQUIRE(e);
    CHECK(e->walk.route(0) == std::vector<CityId>{1, 4, 3});
    CHECK(e->walk.route(3) == std::vector<CityId>{3, 2, 3});
  }
  SUBCASE("gap insert stays inside its day") {
    const auto e = edit_insert_gap(w, 1, 7);
    REQUIRE(e);
    CHECK(e->days == std::vector<int>{0});
    CHECK(e->walk.route(0) == std::vector<CityId>{1, 7, 2, 3});
    CHECK(e->walk.route(3) == w.route(3));
  }
}

TEST_CASE("every edit leaves unlisted days alone") {
  int edits = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance inst = generate_instance(8, 4, seed);
    Rng rng(seed);
    const Schedule s = shrc(inst, apply_scenario(inst.params, ScenarioId::base), rng);
    const Walk w = Walk::from(s);
    for (int p = 0; p < w.size(); ++p) {
      for (int q = 0; q < w.size(); ++q)
        if (auto e = edit_swap(w, p, q)) { check_untouched(w, *e); ++edits; }
      if (auto e = edit_remove(w, p)) { check_untouched(w, *e); ++edits; }
      if (auto e = edit_replace(w, p, 8)) { check_untouched(w, *e); ++edits; }
      if (auto e = edit_insert_gap(w, p, 8)) { check_untouched(w, *e); ++edits; }
    }
    for (const auto& site : insert_sites(w))
      if (auto e = apply_site(w, site, 8)) {
        check_untouched(w, *e);
        CHECK(e->walk.size() == w.size() + (site.kind == InsertSite::Kind::Excursion ? 2 : 1));
        ++edits;
      }
  }
  CHECK(edits > 1000);
}
