#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "brute_force.hpp"
#include "fixtures.hpp"
#include "mptpp/error.hpp"
#include "mptpp/oracle.hpp"
#include "mptpp/reward.hpp"
#include "mptpp/rng.hpp"

using namespace mptpp;

namespace {

Instance relabel(const Instance& inst, const std::vector<CityId>& perm) {
  // perm[old] = new, capital fixed
  Instance out = inst;
  for (const City& c : inst.cities) {
    City moved = c;
    moved.id = perm[c.id];
    if (c.parent_id) moved.parent_id = perm[*c.parent_id];
    out.cities[moved.id - 1] = moved;
  }
  for (int i = 0; i <= inst.n(); ++i)
    for (int j = 0; j <= inst.n(); ++j) {
      out.travel.cost[perm[i]][perm[j]] = inst.travel.cost[i][j];
      out.travel.minutes[perm[i]][perm[j]] = inst.travel.minutes[i][j];
    }
  return out;
}

} // namespace

TEST_CASE("capital-only instance") {
  Instance inst = fixtures::line_instance({0}, 1, 840, {100});
  const auto r = solve_exact(inst, apply_scenario(inst.params, ScenarioId::base));
  CHECK(r.objective == 100);
  REQUIRE(r.schedule.m() == 1);
  CHECK(tour_type(r.schedule.day(1)) == TourType::Type2);
  CHECK(r.schedule.day(1).meetings == std::vector<CityId>{1});
}

TEST_CASE("expensive travel keeps the politician at the capital") {
  Instance inst = fixtures::line_instance({0, 600}, 2, 840, {300, 500});
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  inst.cities[0].size_class = SizeClass::big;
  const auto r = solve_exact(inst, sc);
  for (const DayTour& d : r.schedule.days) CHECK(d.route == std::vector<CityId>{1});
  CHECK(r.objective == doctest::Approx(300 + 300 * 0.5 * 0.25));
  const auto bf = fixtures::brute_force(inst, sc);
  CHECK(bf.best == doctest::Approx(r.objective));
  for (const DayTour& d : bf.argmax.days) CHECK(d.route == std::vector<CityId>{1});
}

TEST_CASE("oracle agrees with the unmemoized enumerator") {
  int compared = 0;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const int n = 3 + static_cast<int>(seed % 2);
    const int m = 1 + static_cast<int>((seed / 2) % 2);
    GenerateOptions opts;
    opts.kappa = 1;
    opts.max_tour_minutes = 480 + 60.0 * static_cast<double>(seed % 6);
    Instance inst = generate_instance(n, m, seed, opts);
    inst.params.cost_normalizer = 0.5 + static_cast<double>(seed % 3);
    if (seed % 5 == 0) inst.params.reward_direction = RewardDirection::back_loaded;
    for (ScenarioId id : {ScenarioId::base, ScenarioId::full_1meet, ScenarioId::rew_only, ScenarioId::alt_1depot}) {
      ScenarioConfig sc = apply_scenario(inst.params, id);
      if (seed % 7 == 0) sc.end_at_capital = true;
      if (seed % 4 == 0) sc.require_daily_meeting = false;
      const auto bf = fixtures::brute_force(inst, sc);
      if (bf.feasible_count == 0) {
        CHECK_THROWS_AS(solve_exact(inst, sc), ConstructionError);
        continue;
      }
      const auto r = solve_exact(inst, sc);
      CHECK(r.objective == doctest::Approx(bf.best).epsilon(1e-12));
      CHECK(check_feasibility(r.schedule, inst, sc).empty());
      CHECK(net_benefit(r.schedule, inst, sc) == doctest::Approx(r.objective).epsilon(1e-12));
      ++compared;
    }
  }
  CHECK(compared >= 100);
}

TEST_CASE("oracle optimum is invariant under relabelling") {
  Rng rng(3);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const Instance inst = generate_instance(5, 2, seed);
    std::vector<CityId> perm(static_cast<std::size_t>(inst.n()) + 1);
    std::iota(perm.begin(), perm.end(), 0);
    for (int k = inst.n(); k > 2; --k) std::swap(perm[k], perm[2 + rng.below(static_cast<std::uint64_t>(k - 1))]);
    const Instance other = relabel(inst, perm);
    const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
    CHECK(solve_exact(inst, sc).objective == doctest::Approx(solve_exact(other, sc).objective));
  }
}

TEST_CASE("oracle refuses oversized instances") {
  const Instance seven = generate_instance(7, 2, 1);
  CHECK_THROWS_AS(solve_exact(seven, apply_scenario(seven.params, ScenarioId::base)), LimitError);
  const Instance three_days = generate_instance(4, 3, 1);
  CHECK_THROWS_AS(solve_exact(three_days, apply_scenario(three_days.params, ScenarioId::base)), LimitError);
  OracleLimits tiny;
  tiny.max_states = 10;
  const Instance six = generate_instance(6, 2, 1);
  CHECK_THROWS_AS(solve_exact(six, apply_scenario(six.params, ScenarioId::base), tiny), LimitError);
  OracleLimits wide;
  wide.max_days = 3;
  CHECK_NOTHROW(solve_exact(three_days, apply_scenario(three_days.params, ScenarioId::base), wide));
}

TEST_CASE("six-city two-day instances solve and stay feasible") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Instance inst = generate_instance(6, 2, seed);
    const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
    const auto r = solve_exact(inst, sc);
    CHECK(check_feasibility(r.schedule, inst, sc).empty());
    CHECK(solve_exact(inst, sc).schedule == r.schedule);
  }
}
