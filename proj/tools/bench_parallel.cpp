// Wall time of serial vs OpenMP replications on the same configs.
#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "mptpp/instance.hpp"
#include "mptpp/search.hpp"

using namespace mptpp;

namespace {

template <class F>
double wall(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel replications"};
  std::vector<std::string> files;
  int runs = 8, iters = 10, ell = 10, repeats = 3;
  app.add_option("instances", files, "instance JSON files (generated set when omitted)");
  app.add_option("--runs", runs)->capture_default_str();
  app.add_option("--iter-max", iters)->capture_default_str();
  app.add_option("--ell-max", ell)->capture_default_str();
  app.add_option("--repeats", repeats, "timed repetitions, best kept")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  std::vector<Instance> insts;
  for (const auto& f : files) insts.push_back(load_instance(f));
  if (insts.empty())
    for (auto [n, m] : {std::pair{8, 3}, {12, 4}, {16, 5}}) insts.push_back(generate_instance(n, m, 11));

  SearchConfig cfg;
  cfg.runs = runs;
  cfg.iter_max = iters;
  cfg.ell_max = ell;
  std::printf("threads %d\n", omp_get_max_threads());
  std::printf("%-20s %10s %10s %8s %s\n", "instance", "serial_s", "omp_s", "speedup", "same");
  int mismatches = 0;
  for (const auto& inst : insts) {
    const ScenarioConfig sc = apply_scenario(inst.params, ScenarioId::base);
    double ts = 1e300, tp = 1e300;
    std::vector<SearchResult> a, b;
    for (int k = 0; k < repeats; ++k) {
      ts = std::min(ts, wall([&] { a = run_replications_serial(inst, sc, cfg); }));
      tp = std::min(tp, wall([&] { b = run_replications(inst, sc, cfg); }));
    }
    bool same = a.size() == b.size();
    for (std::size_t r = 0; same && r < a.size(); ++r) same = a[r].best == b[r].best && a[r].objective == b[r].objective;
    mismatches += !same;
    std::printf("%-20s %10.3f %10.3f %8.2f %s\n", inst.name.c_str(), ts, tp, ts / tp, same ? "yes" : "NO");
  }
  return mismatches ? 1 : 0;
}
