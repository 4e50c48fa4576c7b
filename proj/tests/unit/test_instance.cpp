#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "city_table.hpp"
#include "fixtures.hpp"
#include "mptpp/error.hpp"
#include "mptpp/instance.hpp"
#include "mptpp/rng.hpp"

using namespace mptpp;

namespace {

using fixtures::Row;
using fixtures::kTable;

// Independent evaluation: rank provinces by population, multiplier by rank,
// nearest-integer rounding computed in long double.
std::map<std::string, double> oracle_rewards(long long min_pop, std::map<std::string, int> cf_fix = {}) {
  std::vector<const Row*> prov;
  for (const Row& r : kTable)
    if (!r.town) prov.push_back(&r);
  std::sort(prov.begin(), prov.end(), [](const Row* a, const Row* b) { return a->pop > b->pop; });
  std::map<std::string, double> out;
  for (std::size_t k = 0; k < prov.size(); ++k) {
    const double mult = k == 0 ? 2.0 : (k < 7 ? 3.0 : 5.0);
    const long double q = static_cast<long double>(prov[k]->pop) / min_pop;
    const double rounded = static_cast<double>(std::floor(q + 0.5L));
    int cf = prov[k]->cf;
    if (cf_fix.count(prov[k]->name)) cf = cf_fix[prov[k]->name];
    out[prov[k]->name] = cf * (100 + rounded * mult);
  }
  return out;
}

} // namespace

TEST_CASE("multiplier by population rank") {
  City c;
  CHECK(derive_multiplier(c, 1) == 2.0);
  CHECK(derive_multiplier(c, 2) == 3.0);
  CHECK(derive_multiplier(c, 7) == 3.0);
  CHECK(derive_multiplier(c, 8) == 5.0);
  CHECK(derive_multiplier(c, 30) == 5.0);
  CHECK_THROWS_AS(derive_multiplier(c, std::nullopt), DomainError);
}

TEST_CASE("base reward derivation examples") {
  CHECK(derive_base_reward(14657434, 5, 2.0, 78550) == 2370);
  CHECK(derive_base_reward(78550, 2, 5.0, 78550) == 210);
  CHECK(derive_base_reward(5270575, 5, 3.0, 78550) == 1505);
  CHECK_THROWS_AS(derive_base_reward(1000, 2, 5.0, 0), DomainError);
  // exact half rounds away from zero
  CHECK(derive_base_reward(150, 2, 1.0, 100) == 2 * (100 + 2));
  CHECK(derive_base_reward(149, 2, 1.0, 100) == 2 * (100 + 1));
}

TEST_CASE("base reward is monotone in population and criticality factor") {
  Rng rng(11);
  for (int k = 0; k < 2000; ++k) {
    const std::int64_t min_pop = rng.between(1000, 200000);
    const std::int64_t p1 = rng.between(0, 20000000);
    const std::int64_t p2 = p1 + rng.between(0, 500000);
    const int cf = static_cast<int>(rng.between(2, 5));
    const double mult = std::vector<double>{2.0, 3.0, 5.0}[rng.below(3)];
    CHECK(derive_base_reward(p1, cf, mult, min_pop) <= derive_base_reward(p2, cf, mult, min_pop));
    if (cf < 5) CHECK(derive_base_reward(p1, cf, mult, min_pop) <= derive_base_reward(p1, cf + 1, mult, min_pop));
  }
}

TEST_CASE("city table reconstruction with min population 78550") {
  const auto derived = oracle_rewards(78550);
  int matches = 0, provinces = 0;
  std::set<std::string> mismatched;
  for (const Row& r : kTable) {
    if (r.town) continue;
    ++provinces;
    if (derived.at(r.name) == r.reward) ++matches;
    else mismatched.insert(r.name);
  }
  CHECK(provinces == 36);
  CHECK(matches == 34);
  CHECK(mismatched == std::set<std::string>{"Manisa", "Adıyaman"});
  // Each mismatch is exactly one criticality step away, in opposite directions.
  const auto fixed = oracle_rewards(78550, {{"Manisa", 3}, {"Adıyaman", 3}});
  CHECK(fixed.at("Manisa") == 570);
  CHECK(fixed.at("Adıyaman") == 420);
}

TEST_CASE("min population window reproducing the six anchor cities") {
  const std::vector<std::string> anchors{"İstanbul", "Ankara", "İzmir", "Bursa", "Adana", "Konya"};
  auto anchors_ok = [&](long long mp) {
    const auto d = oracle_rewards(mp);
    for (const auto& a : anchors) {
      const Row* row = nullptr;
      for (const Row& r : kTable)
        if (a == r.name) row = &r;
      if (d.at(a) != row->reward) return false;
    }
    return true;
  };
  long long lo = -1, hi = -1;
  for (long long mp = 70000; mp <= 90000; ++mp) {
    if (!anchors_ok(mp)) continue;
    if (lo < 0) lo = mp;
    hi = mp;
  }
  CHECK(lo == 78173);
  CHECK(hi == 78592);
  for (long long mp = lo; mp <= hi; ++mp) REQUIRE(anchors_ok(mp));
}

TEST_CASE("bundled 40-city fixture loads with the tabulated rewards") {
  const Instance inst = fixtures::turkey();
  CHECK(inst.n() == 40);
  CHECK(inst.params.days == 10);
  CHECK(inst.city(inst.params.capital_id).name == "Ankara");
  std::map<std::string, int> table;
  for (const Row& r : kTable) table[r.name] = r.reward;
  for (const City& c : inst.cities) CHECK_MESSAGE(c.base_reward == table.at(c.name), c.name);
  for (const City& c : inst.cities)
    if (c.parent_id) CHECK(c.base_reward == inst.city(*c.parent_id).base_reward);
  CHECK(validate(inst).empty());
  int big = 0;
  for (const City& c : inst.cities) big += c.size_class == SizeClass::big;
  CHECK(big == 3);
}

TEST_CASE("noncritical minimum reward at the minimum population") {
  City bayburt;
  bayburt.population = 78550;
  bayburt.criticality = Criticality::noncritical;
  CHECK(derive_base_reward(bayburt.population, bayburt.cf(), derive_multiplier(bayburt, 60), 78550) == 210);
}

TEST_CASE("towns inherit their parent's reward") {
  Instance inst = generate_instance(5, 2, 3);
  inst.cities[4].parent_id = 2;
  inst.cities[4].reward_overridden = false;
  derive_rewards(inst);
  CHECK(inst.cities[4].base_reward == inst.cities[1].base_reward);
  CHECK(validate(inst).empty());
  inst.cities[4].base_reward += 1;
  auto vs = validate(inst);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].invariant == "TownInheritsReward");
}

TEST_CASE("validation reports offending entities") {
  Instance inst = generate_instance(4, 2, 5);
  CHECK(validate(inst).empty());

  Instance neg = inst;
  neg.travel.cost[1][2] = -3;
  auto vs = validate(neg);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].render() == "NonNegativeMatrix@travel_cost(1,2)");

  Instance k = inst;
  k.params.repeat_depreciation = 0.5;
  vs = validate(k);
  REQUIRE(vs.size() == 1);
  CHECK(vs[0].invariant == "RepeatDepreciationRange");

  Instance diag = inst;
  diag.travel.minutes[2][2] = 5;
  CHECK(validate(diag).at(0).invariant == "ZeroDiagonal");

  Instance fict = inst;
  fict.travel.minutes[0][3] = 1;
  CHECK(validate(fict).at(0).invariant == "FictitiousArcZero");

  Instance cap = inst;
  cap.params.capital_id = 9;
  CHECK(validate(cap).at(0).invariant == "CapitalExists");
}

TEST_CASE("loading rejects malformed files with a location") {
  const Instance inst = generate_instance(4, 2, 5);
  const std::string good = instance_to_json_text(inst);
  CHECK(instance_from_json_text(good) == inst);

  std::string bad_dim = good;
  {
    Instance t = inst;
    t.travel.cost.pop_back();
    bad_dim = instance_to_json_text(t);
  }
  CHECK_THROWS_WITH_AS(instance_from_json_text(bad_dim), doctest::Contains("MatrixDimension"), ValidationError);

  Instance orphan = inst;
  orphan.cities[3].parent_id = 17;
  CHECK_THROWS_WITH_AS(instance_from_json_text(instance_to_json_text(orphan)),
                       doctest::Contains("ParentExists@city 4"), ValidationError);

  std::string unknown = good;
  unknown.replace(unknown.find("\"name\""), 6, "\"nome\"");
  CHECK_THROWS_WITH_AS(instance_from_json_text(unknown), doctest::Contains("unknown key"), ParseError);

  CHECK_THROWS_AS(instance_from_json_text("{\"name\": 3"), ParseError);
}

TEST_CASE("load after save is the identity") {
  const Instance turkey = fixtures::turkey();
  CHECK(instance_from_json_text(instance_to_json_text(turkey)) == turkey);
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Instance g = generate_instance(3 + static_cast<int>(seed % 8), 1 + static_cast<int>(seed % 4), seed);
    CHECK(instance_from_json_text(instance_to_json_text(g)) == g);
  }
  const std::string path = "test_instance_roundtrip.json";
  save_instance(turkey, path);
  CHECK(load_instance(path) == turkey);
  std::remove(path.c_str());
}

TEST_CASE("generator") {
  CHECK(generate_instance(6, 2, 7) == generate_instance(6, 2, 7));
  CHECK(!(generate_instance(6, 2, 7) == generate_instance(6, 2, 8)));
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Instance g = generate_instance(3, 1, seed);
    std::set<SizeClass> classes;
    for (const City& c : g.cities) classes.insert(c.size_class);
    CHECK(classes.size() == 3);
    CHECK(validate(g).empty());
    for (std::size_t i = 0; i < g.travel.cost.size(); ++i)
      for (std::size_t j = 0; j < g.travel.cost.size(); ++j) {
        CHECK(g.travel.cost[i][j] == std::floor(g.travel.cost[i][j]));
        CHECK(g.travel.minutes[i][j] == std::floor(g.travel.minutes[i][j]));
      }
  }
  CHECK_THROWS_AS(generate_instance(2, 1, 1), DomainError);

  // criticality proportions follow 42/19/11/9
  std::map<Criticality, int> counts;
  int total = 0;
  for (std::uint64_t seed = 1; seed <= 200; ++seed)
    for (const City& c : generate_instance(20, 1, seed).cities) { ++counts[c.criticality]; ++total; }
  CHECK(counts[Criticality::noncritical] / double(total) == doctest::Approx(42.0 / 81).epsilon(0.05));
  CHECK(counts[Criticality::pos_neg_critical] / double(total) == doctest::Approx(9.0 / 81).epsilon(0.1));
}
