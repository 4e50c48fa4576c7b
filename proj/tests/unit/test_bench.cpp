#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>

#include "fixtures.hpp"
#include "mptpp/bench.hpp"
#include "mptpp/error.hpp"

using namespace mptpp;
using fixtures::day;

namespace {

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

BenchSpec tiny_spec(int runs) {
  BenchSpec spec;
  spec.generated = {{4, 2, 1}, {5, 2, 2}, {5, 3, 3}};
  spec.search.runs = runs;
  spec.search.iter_max = 4;
  spec.search.ell_max = 4;
  return spec;
}

} // namespace

TEST_CASE("gap arithmetic") {
  CHECK(gap_percent(7110, 7110) == 0.0);
  CHECK(one_decimal(gap_percent(47279, 63009)) == "-33.3");
  CHECK(gap_percent(47279, 63009) == doctest::Approx(-33.27058).epsilon(1e-6));
  CHECK(gap_percent(100, 0) == 100.0);
  CHECK_THROWS_AS(gap_percent(0, 5), DomainError);
  // agrees with the relative error definition on random pairs
  for (int k = 1; k < 50; ++k) {
    const double ref = 37.0 * k + 11, obj = 1000.0 / k;
    CHECK(gap_percent(ref, obj) == doctest::Approx((1 - obj / ref) * 100));
  }
}

TEST_CASE("reference table") {
  const auto refs = load_references(fixtures::data_path("references.csv"));
  CHECK(refs.size() == 18);
  const auto& r = refs.at({"6C-2D", "base"});
  CHECK(r.value == 7110);
  CHECK(r.proven);
  CHECK(refs.at({"51C-30D", "base"}).best_known == 63009);
  CHECK(!refs.at({"51C-30D", "base"}).proven);
  CHECK_THROWS_AS(parse_references("a,b\n"), ParseError);
  CHECK_THROWS_AS(parse_references("instance,scenario,reference,proven,bks\nx,base,abc,1,\n"), ParseError);
  CHECK_THROWS_AS(parse_references("instance,scenario,reference,proven,bks\nx,nowhere,1,1,\n"), ParseError);
  const auto one = parse_references("instance,scenario,reference,proven,bks\nx,rew_only,12.5,0,\n");
  CHECK(one.at({"x", "rew_only"}).value == 12.5);
  CHECK(!one.at({"x", "rew_only"}).best_known);
}

TEST_CASE("bench spec parsing") {
  const auto spec = parse_bench_spec(
      R"({"instances": ["a.json", {"generate": {"n": 5, "m": 2, "seed": 7}}], "scenarios": ["base", "rew_only"],
          "runs": 3, "seed": 9, "lambda": null, "references": "refs.csv"})",
      "/tmp/x");
  CHECK(spec.instance_paths == std::vector<std::string>{"/tmp/x/a.json"});
  CHECK(spec.generated.size() == 1);
  CHECK(spec.generated[0].seed == 7);
  CHECK(spec.scenarios.size() == 2);
  CHECK(spec.search.runs == 3);
  CHECK(spec.search.seed == 9);
  CHECK(std::isinf(spec.search.lambda));
  CHECK(*spec.references_path == "/tmp/x/refs.csv");
  CHECK_THROWS_AS(parse_bench_spec(R"({"instances": [], "bogus": 1})"), ParseError);
  CHECK_THROWS_AS(parse_bench_spec(R"({"scenarios": ["base"]})"), ParseError);
}

TEST_CASE("bench over tiny instances") {
  const BenchSpec spec = tiny_spec(10);
  ReferenceTable refs;
  const auto first = run_bench(spec, refs, {true, false});
  REQUIRE(first.size() == 3);
  for (const auto& r : first) {
    CHECK(r.error.empty());
    REQUIRE(r.best);
    REQUIRE(r.mean);
    CHECK(*r.mean <= *r.best + 1e-9);
    CHECK(r.runs == 10);
    CHECK(!r.mean_cpu_s);
    CHECK(!r.gap_pct);
  }
  const std::string csv = bench_csv(first);
  CHECK(csv.substr(0, csv.find('\n')) == "instance,scenario,runs,best,mean,mean_cpu_s,reference,gap_pct");
  CHECK(csv == bench_csv(run_bench(spec, refs, {false, false})));
  CHECK(csv == bench_csv(run_bench(spec, refs, {true, false})));

  refs[{first[1].instance, "base"}] = Reference{*first[1].best * 1.25, false, std::nullopt};
  const auto with_ref = run_bench(spec, refs, {true, true});
  CHECK(!with_ref[0].gap_pct);
  REQUIRE(with_ref[1].gap_pct);
  CHECK(*with_ref[1].gap_pct == doctest::Approx(20.0));
  CHECK(with_ref[1].mean_cpu_s.has_value());
}

TEST_CASE("bench keeps going after a bad instance") {
  BenchSpec spec = tiny_spec(2);
  spec.instance_paths = {"/nonexistent/none.json"};
  spec.scenarios = {ScenarioId::base, ScenarioId::alt_1depot};
  const auto recs = run_bench(spec, {}, {false, false});
  REQUIRE(recs.size() == 8);
  CHECK(!recs[0].error.empty());
  CHECK(!recs[1].error.empty());
  CHECK(recs[0].instance == "none");
  for (std::size_t k = 2; k < recs.size(); ++k) CHECK(recs[k].error.empty());
  const std::string csv = bench_csv(recs);
  CHECK(csv.find("\nnone,base,2,,,,,\n") != std::string::npos);
}

TEST_CASE("daily tour listing") {
  const Instance tk = fixtures::turkey();
  const Schedule s = fixtures::turkey_tours();
  CHECK(report_day(s.day(1), tk) == "Ankara (M) → Hatay (M) → İskenderun (M)");

  const Instance inst = fixtures::line_instance({0, 30, 60}, 2, 840, {500, 400, 300});
  CHECK(report_day(day({2}, {2}), inst) == "L2 (M)");
  // meeting moved to the next day shows up there only
  const DayTour d1 = day({1, 2}, {1}), d2 = day({2, 3}, {2, 3});
  CHECK(report_day(d1, inst) == "L1 (M) → L2");
  CHECK(report_day(d2, inst) == "L2 (M) → L3 (M)");
  CHECK(report_day(day({1, 2, 1}, {1, 2}), inst) == "L1 (M) → L2 (M) → L1");

  const ScenarioConfig sc = apply_scenario(tk.params, ScenarioId::base);
  const std::string full = report_schedule(s, tk, sc);
  CHECK(full.find("Day 10: ") != std::string::npos);
  CHECK(full.find("Day 1: Ankara (M) → Hatay (M) → İskenderun (M)") != std::string::npos);
}
