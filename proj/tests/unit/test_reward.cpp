#include <doctest.h>

#include "fixtures.hpp"
#include "mptpp/error.hpp"
#include "mptpp/reward.hpp"
#include "mptpp/rng.hpp"

using namespace mptpp;

namespace {

struct Setup {
  Instance inst;
  ScenarioConfig sc;
  RewardModel model;
  Setup(int m, RewardDirection dir = RewardDirection::front_loaded) {
    inst = fixtures::line_instance({0, 10}, m, 840, {1000, 100});
    inst.params.reward_direction = dir;
    sc = apply_scenario(inst.params, ScenarioId::base);
    model = RewardModel::from(inst, sc);
  }
};

} // namespace

TEST_CASE("first meeting reward") {
  Setup s(10);
  const City& c = s.inst.city(1);
  CHECK(first_meeting_reward(c, 1, s.model) == 1000);
  CHECK(first_meeting_reward(c, 10, s.model) == doctest::Approx(100));
  Setup b(10, RewardDirection::back_loaded);
  CHECK(first_meeting_reward(b.inst.city(2), 10, b.model) == doctest::Approx(200));
  CHECK_THROWS_AS(first_meeting_reward(c, 0, s.model), DomainError);
  CHECK_THROWS_AS(first_meeting_reward(c, 11, s.model), DomainError);
}

TEST_CASE("repeat meeting reward") {
  Setup s(10);
  const City& c = s.inst.city(1);
  CHECK(repeat_meeting_reward(c, 6, 5, s.model) == doctest::Approx(125));
  CHECK(repeat_meeting_reward(c, 6, 1, s.model) == doctest::Approx(25));
  CHECK_THROWS_AS(repeat_meeting_reward(c, 6, 6, s.model), DomainError);
  CHECK_THROWS_AS(repeat_meeting_reward(c, 6, 0, s.model), DomainError);
  CHECK_THROWS_AS(repeat_meeting_reward(c, 1, 1, s.model), DomainError);
  Setup b(10, RewardDirection::back_loaded);
  // pi * s * (t+m) / (K m^2)
  CHECK(repeat_meeting_reward(b.inst.city(1), 6, 5, b.model) == doctest::Approx(1000.0 * 5 * 16 / 200));
}

TEST_CASE("reward shape properties") {
  for (int m = 1; m <= 12; ++m) {
    Setup f(m), b(m, RewardDirection::back_loaded);
    const City& c = f.inst.city(1);
    for (int t = 1; t < m; ++t) {
      CHECK(first_meeting_reward(c, t, f.model) >= first_meeting_reward(c, t + 1, f.model));
      CHECK(first_meeting_reward(c, t, b.model) <= first_meeting_reward(c, t + 1, b.model));
    }
    for (int t = 2; t <= m; ++t)
      for (int s = 1; s < t; ++s) {
        CHECK(repeat_meeting_reward(c, t, s, f.model) < first_meeting_reward(c, t, f.model));
        if (s + 1 < t) {
          CHECK(repeat_meeting_reward(c, t, s, f.model) < repeat_meeting_reward(c, t, s + 1, f.model));
          CHECK(repeat_meeting_reward(c, t, s, b.model) < repeat_meeting_reward(c, t, s + 1, b.model));
        }
      }
  }
}

TEST_CASE("net benefit examples") {
  Instance one = fixtures::line_instance({0}, 1, 840, {100});
  const ScenarioConfig sc1 = apply_scenario(one.params, ScenarioId::base);
  Schedule s1{{fixtures::day({1}, {1})}};
  CHECK(net_benefit(s1, one, sc1) == 100);
  Schedule empty{{fixtures::day({1}, {})}};
  CHECK(net_benefit(empty, one, sc1) == 0);

  Setup s(10);
  Schedule two{{fixtures::day({1}, {1}), fixtures::day({1}, {1})}};
  for (int t = 3; t <= 10; ++t) two.days.push_back(fixtures::day({1}, {}));
  CHECK(net_benefit(two, s.model, s.sc) == doctest::Approx(1045));
}

TEST_CASE("net benefit subtracts weighted travel and honours scenarios") {
  Instance inst = fixtures::line_instance({0, 10, 30}, 2, 840, {500, 300, 200});
  inst.params.cost_normalizer = 2;
  const ScenarioConfig base = apply_scenario(inst.params, ScenarioId::base);
  Schedule s{{fixtures::day({1, 2, 3}, {2, 3}), fixtures::day({3, 1}, {1})}};
  const double rewards = 300 + 200 + 500 * 0.5;
  CHECK(net_benefit(s, inst, base) == doctest::Approx(rewards - 2 * (10 + 20 + 30)));
  CHECK(net_benefit(s, inst, apply_scenario(inst.params, ScenarioId::rew_only)) == doctest::Approx(rewards));

  Schedule rep{{fixtures::day({1}, {1}), fixtures::day({1}, {1})}};
  CHECK(net_benefit(rep, inst, apply_scenario(inst.params, ScenarioId::full_1meet)) == doctest::Approx(500));
  CHECK(net_benefit(rep, inst, base) == doctest::Approx(500 + 500 * 0.5 * 0.25));
}

TEST_CASE("net benefit is additive over days and scales linearly") {
  Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 5;
    std::vector<double> xs, rw;
    for (int k = 0; k < n; ++k) {
      xs.push_back(static_cast<double>(rng.between(0, 50)));
      rw.push_back(static_cast<double>(rng.between(100, 900)));
    }
    Instance inst = fixtures::line_instance(xs, 3, 10000, rw);
    const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
    const RewardModel model = RewardModel::from(inst, sc);
    Schedule s;
    CityId wake = 1;
    for (int t = 1; t <= 3; ++t) {
      DayTour d;
      d.route.push_back(wake);
      const CityId next = static_cast<CityId>(rng.between(1, n));
      if (next != wake) d.route.push_back(next);
      for (CityId c : d.route)
        if (rng.below(2)) d.meetings.push_back(c);
      normalize(d);
      wake = d.terminal();
      s.days.push_back(d);
    }
    // day-by-day contributions with the ledger carried forward
    double sum = 0;
    std::vector<int> last(static_cast<std::size_t>(n) + 1, 0);
    for (int t = 1; t <= 3; ++t) {
      for (CityId c : s.day(t).meetings) {
        sum += meeting_reward(inst.city(c), t, last[c], model, sc);
        last[c] = t;
      }
      sum -= tour_travel_cost(s.day(t), inst);
    }
    CHECK(net_benefit(s, model, sc) == doctest::Approx(sum).epsilon(1e-12));

    Instance scaled = inst;
    for (auto& c : scaled.cities) c.base_reward *= 3;
    for (auto& row : scaled.travel.cost)
      for (auto& v : row) v *= 3;
    CHECK(net_benefit(s, scaled, sc) == doctest::Approx(3 * net_benefit(s, inst, sc)));
  }
}

TEST_CASE("strict mode rejects meetings off the route") {
  Setup s(1);
  Schedule bad{{DayTour{{1}, {2}}}};
  CHECK_THROWS_AS(net_benefit(bad, s.model, s.sc, true), DomainError);
  CHECK_NOTHROW(net_benefit(bad, s.model, s.sc, false));
}
