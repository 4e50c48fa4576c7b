#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "fixtures.hpp"
#include "mptpp/constructors.hpp"
#include "mptpp/error.hpp"
#include "mptpp/reward.hpp"

using namespace mptpp;

namespace {

std::vector<std::pair<Instance, ScenarioConfig>> corpus() {
  std::vector<std::pair<Instance, ScenarioConfig>> out;
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    GenerateOptions opts;
    opts.kappa = 1 + static_cast<int>(seed % 3);
    const int n = 4 + static_cast<int>(seed % 9);
    const int m = 1 + static_cast<int>(seed % 6);
    Instance inst = generate_instance(n, m, seed, opts);
    for (ScenarioId id : {ScenarioId::base, ScenarioId::full_1meet, ScenarioId::rew_only, ScenarioId::alt_1depot}) {
      ScenarioConfig sc = apply_scenario(inst.params, id);
      if (seed % 4 == 0) sc.end_at_capital = true;
      out.emplace_back(inst, sc);
    }
  }
  return out;
}

} // namespace

TEST_CASE("constructors emit feasible schedules") {
  int built = 0;
  for (const auto& [inst, sc] : corpus()) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      Rng rng(seed);
      const Schedule s = shrc(inst, sc, rng);
      CHECK(check_feasibility(s, inst, sc).empty());
      ++built;
    }
    const Schedule e = escc(inst, sc);
    CHECK(check_feasibility(e, inst, sc).empty());
    ++built;
  }
  const Instance turkey = fixtures::turkey();
  for (ScenarioId id : {ScenarioId::base, ScenarioId::full_1meet, ScenarioId::rew_only, ScenarioId::alt_1depot}) {
    const ScenarioConfig sc = apply_scenario(turkey.params, id);
    Rng rng(9);
    CHECK(check_feasibility(shrc(turkey, sc, rng), turkey, sc).empty());
    CHECK(check_feasibility(escc(turkey, sc), turkey, sc).empty());
  }
  CHECK(built == 640);
}

TEST_CASE("shrc is deterministic per seed") {
  const Instance inst = generate_instance(8, 3, 4);
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  Rng a(5), b(5);
  CHECK(shrc(inst, sc, a) == shrc(inst, sc, b));
  bool differs = false;
  for (std::uint64_t seed = 1; seed <= 20 && !differs; ++seed) {
    Rng r(seed), q(seed + 100);
    differs = !(shrc(inst, sc, r) == shrc(inst, sc, q));
  }
  CHECK(differs);
}

TEST_CASE("shrc favours a dominant reward on day one") {
  const Instance inst = fixtures::line_instance({0, 30, 20, 40}, 2, 840, {100, 100000, 100, 100}, {1});
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  int hits = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    Rng rng(seed);
    hits += shrc(inst, sc, rng).day(1).visits(2);
  }
  CHECK(hits >= 95);
}

TEST_CASE("shrc first pick frequencies follow rewards") {
  const std::vector<double> rewards{100, 400, 300, 200, 100};
  const Instance inst = fixtures::line_instance({0, 10, 20, 30, 40}, 1, 840, rewards, {1});
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  std::map<CityId, int> counts;
  const int draws = 4000;
  for (int k = 0; k < draws; ++k) {
    Rng rng(static_cast<std::uint64_t>(k) + 1);
    ++counts[shrc(inst, sc, rng).day(1).route.at(1)];
  }
  double chi2 = 0;
  const double total = 400 + 300 + 200 + 100;
  for (CityId c = 2; c <= 5; ++c) {
    const double expected = draws * rewards[c - 1] / total;
    chi2 += (counts[c] - expected) * (counts[c] - expected) / expected;
  }
  // 3 degrees of freedom, 0.1% critical value
  CHECK(chi2 < 16.27);
}

TEST_CASE("escc orders the candidates at minimum travel cost") {
  // six cities, one day, everything fits
  Instance inst = generate_instance(6, 1, 21);
  for (City& c : inst.cities)
    if (c.id != 1 && c.size_class == SizeClass::big) { c.size_class = SizeClass::midsize; c.meeting_minutes = 90; }
  inst.params.max_tour_minutes = 100000;
  inst.params.max_meetings_per_day = 5;
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  std::vector<EsccDayTrace> trace;
  const Schedule s = escc(inst, sc, {}, &trace);
  REQUIRE(s.day(1).route.size() == 6);
  CHECK(trace.at(0).permutations == 120);

  std::vector<CityId> perm{2, 3, 4, 5, 6};
  double best = 1e18;
  std::vector<CityId> arg;
  do {
    double c = inst.cost(1, perm[0]);
    for (int k = 0; k + 1 < 5; ++k) c += inst.cost(perm[k], perm[k + 1]);
    if (c < best) { best = c; arg = perm; }
  } while (std::next_permutation(perm.begin(), perm.end()));
  CHECK(tour_travel_cost(s.day(1), inst) == best);
  CHECK(std::vector<CityId>(s.day(1).route.begin() + 1, s.day(1).route.end()) == arg);
  CHECK(s.day(1).meetings == std::vector<CityId>{2, 3, 4, 5, 6});
}

TEST_CASE("escc crops tours under a tight duration") {
  const Instance inst = fixtures::line_instance({0, 10, 20, 30, 40}, 3, 100, {500, 400, 300, 200, 100}, {1});
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  const Schedule s = escc(inst, sc);
  CHECK(check_feasibility(s, inst, sc).empty());
  for (const DayTour& d : s.days) CHECK(d.route.size() <= 2);
}

TEST_CASE("escc is independent of the seed and ranks by current reward") {
  const Instance inst = fixtures::turkey();
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  ConstructorConfig a, b;
  b.seed = 999;
  std::vector<EsccDayTrace> trace;
  const Schedule s = escc(inst, sc, a, &trace);
  CHECK(s == escc(inst, sc, b));

  // recompute each day's ranking from the schedule's own history
  const RewardModel model = RewardModel::from(inst, sc);
  for (int t = 1; t <= s.m(); ++t) {
    std::vector<int> last(static_cast<std::size_t>(inst.n()) + 1, 0), count(last.size(), 0);
    for (int u = 1; u < t; ++u)
      for (CityId c : s.day(u).meetings) { last[c] = u; ++count[c]; }
    const CityId wake = t == 1 ? 1 : s.day(t - 1).terminal();
    std::vector<std::pair<double, CityId>> expect;
    for (const City& c : inst.cities) {
      if (c.id == wake || count[c.id] >= sc.meeting_caps.of(c.size_class)) continue;
      const double m = inst.params.days;
      double r = c.base_reward * (m - t + 1) / m;
      if (last[c.id] > 0) r *= (t - last[c.id]) / (inst.params.repeat_depreciation * m);
      expect.emplace_back(r, c.id);
    }
    std::sort(expect.begin(), expect.end(), [](auto x, auto y) { return x.first != y.first ? x.first > y.first : x.second < y.second; });
    REQUIRE(trace[t - 1].ranked.size() == expect.size());
    for (std::size_t k = 0; k < expect.size(); ++k) {
      CHECK(trace[t - 1].ranked[k] == expect[k].second);
      CHECK(trace[t - 1].rewards[k] == doctest::Approx(expect[k].first));
    }
    int bigs = 0;
    for (CityId c : trace[t - 1].candidates) bigs += inst.city(c).size_class == SizeClass::big;
    CHECK(bigs <= 1);
  }
}

TEST_CASE("constructors fail when the capital meeting alone is too long") {
  Instance inst = fixtures::line_instance({0, 10, 20}, 1, 50, {100, 100, 100}, {1});
  const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
  Rng rng(1);
  CHECK_THROWS_AS(shrc(inst, sc, rng), ConstructionError);
  CHECK_THROWS_AS(escc(inst, sc), ConstructionError);
}
