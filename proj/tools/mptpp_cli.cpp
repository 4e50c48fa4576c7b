#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mptpp/bench.hpp"
#include "mptpp/constructors.hpp"
#include "mptpp/error.hpp"
#include "mptpp/milp.hpp"
#include "mptpp/oracle.hpp"
#include "mptpp/reward.hpp"
#include "mptpp/search.hpp"

using namespace mptpp;
namespace fs = std::filesystem;

namespace {

// Instance paths that do not exist are looked up under MPTPP_FIXTURE_DIR.
std::string find_instance(const std::string& path) {
  if (fs::exists(path)) return path;
  if (const char* dir = std::getenv("MPTPP_FIXTURE_DIR")) {
    for (const std::string& cand : {path, path + ".json"}) {
      const fs::path p = fs::path(dir) / cand;
      if (fs::exists(p)) return p.string();
    }
  }
  throw ParseError("instance not found: " + path);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw ParseError("cannot write " + out);
  f << text;
}

struct ScenarioFlags {
  std::string scenario = "base";
  std::string direction;
  bool no_daily_meeting = false;
  bool end_at_capital = false;

  void add(CLI::App* app) {
    app->add_option("--scenario", scenario, "base|full_1meet|rew_only|alt_1depot")->capture_default_str();
    app->add_option("--reward-direction", direction, "front|back (default from the instance)");
    app->add_flag("--no-daily-meeting", no_daily_meeting, "allow days without a meeting");
    app->add_flag("--end-at-capital", end_at_capital, "last night must be at the capital");
  }

  ScenarioConfig resolve(const Instance& inst) const {
    std::optional<RewardDirection> d;
    if (direction == "front") d = RewardDirection::front_loaded;
    else if (direction == "back") d = RewardDirection::back_loaded;
    else if (!direction.empty()) d = parse_reward_direction(direction);
    ScenarioConfig sc = apply_scenario(inst.params, parse_scenario(scenario), d);
    if (no_daily_meeting) sc.require_daily_meeting = false;
    if (end_at_capital) sc.end_at_capital = true;
    return sc;
  }
};

std::string params_echo(const ScenarioConfig& sc, const nlohmann::ordered_json& extra = {}) {
  nlohmann::ordered_json j;
  j["scenario"] = to_string(sc.id);
  j["require_daily_meeting"] = sc.require_daily_meeting;
  j["end_at_capital"] = sc.end_at_capital;
  if (sc.reward_direction) j["reward_direction"] = to_string(*sc.reward_direction);
  for (const auto& [k, v] : extra.items()) j[k] = v;
  return j.dump();
}

std::string solution_json(const Schedule& s, const Instance& inst, const ScenarioConfig& sc,
                          const nlohmann::ordered_json& extra = {}) {
  SolutionMeta meta;
  meta.instance_name = inst.name;
  meta.objective = net_benefit(s, inst, sc);
  meta.params_echo_json = params_echo(sc, extra);
  return encode(s, meta);
}

Schedule load_schedule(const std::string& path) { return decode(slurp(path)); }

double parse_lambda(const std::string& s) {
  if (s == "inf" || s == "none") return kNoFilter;
  return std::stod(s);
}

std::string fixed(double v, int d = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", d, v);
  return buf;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-period campaign tour planner"};
  app.require_subcommand(1);
  int status = 0;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random instance");
  int gn = 6, gm = 2, gkappa = 5;
  std::uint64_t gseed = 1;
  double gtmax = 840;
  std::string gout;
  gen->add_option("--cities,-n", gn, "number of cities")->capture_default_str();
  gen->add_option("--days,-m", gm, "campaign days")->capture_default_str();
  gen->add_option("--seed", gseed)->capture_default_str();
  gen->add_option("--kappa", gkappa, "max nights away from the capital")->capture_default_str();
  gen->add_option("--tmax", gtmax, "max daily tour minutes")->capture_default_str();
  gen->add_option("--out,-o", gout, "output file (stdout when omitted)");
  gen->callback([&] {
    GenerateOptions opts;
    opts.kappa = gkappa;
    opts.max_tour_minutes = gtmax;
    emit(instance_to_json_text(generate_instance(gn, gm, gseed, opts)), gout);
  });

  std::string inst_path, sol_path, out;
  ScenarioFlags flags;
  auto add_common = [&](CLI::App* sub, bool needs_solution) {
    sub->add_option("--instance,-i", inst_path, "instance JSON (or name under MPTPP_FIXTURE_DIR)")->required();
    if (needs_solution) sub->add_option("--solution,-s", sol_path, "solution JSON")->required();
    sub->add_option("--out,-o", out, "output file (stdout when omitted)");
    flags.add(sub);
  };

  // construct
  auto* construct = app.add_subcommand("construct", "build one schedule with a constructive heuristic");
  add_common(construct, false);
  std::string method = "escc";
  std::uint64_t seed = 1;
  construct->add_option("--method", method, "shrc|escc")->check(CLI::IsMember({"shrc", "escc"}))->capture_default_str();
  construct->add_option("--seed", seed)->capture_default_str();
  construct->callback([&] {
    const Instance inst = load_instance(find_instance(inst_path));
    const ScenarioConfig sc = flags.resolve(inst);
    Rng rng(seed);
    const Schedule s = method == "shrc" ? shrc(inst, sc, rng) : escc(inst, sc);
    emit(solution_json(s, inst, sc, {{"method", method}, {"seed", seed}}), out);
  });

  // solve
  auto* solve = app.add_subcommand("solve", "multi-start iterated VND");
  add_common(solve, false);
  SearchConfig cfg;
  std::string lambda = "0.75", trace_path;
  double time_limit = 0;
  bool serial = false, no_timing = false;
  solve->add_option("--runs", cfg.runs, "independent replications")->capture_default_str();
  solve->add_option("--iter-max", cfg.iter_max, "outer iterations per run")->capture_default_str();
  solve->add_option("--ell-max", cfg.ell_max, "perturbations per restart")->capture_default_str();
  solve->add_option("--k-max", cfg.k_max, "VND failures before stopping")->capture_default_str();
  solve->add_option("--lambda", lambda, "granular threshold, 'inf' disables")->capture_default_str();
  solve->add_option("--seed", cfg.seed)->capture_default_str();
  solve->add_option("--time-limit", time_limit, "wall seconds per run (0 = none)");
  solve->add_option("--trace", trace_path, "write the iteration trace of the best run as CSV");
  solve->add_flag("--serial", serial, "run replications one after another");
  solve->add_flag("--no-timing", no_timing, "omit CPU time from stderr");
  solve->callback([&] {
    const Instance inst = load_instance(find_instance(inst_path));
    const ScenarioConfig sc = flags.resolve(inst);
    cfg.lambda = parse_lambda(lambda);
    if (time_limit > 0) cfg.time_limit_s = time_limit;
    const auto runs = serial ? run_replications_serial(inst, sc, cfg) : run_replications(inst, sc, cfg);
    std::size_t best = 0;
    double cpu = 0;
    for (std::size_t r = 0; r < runs.size(); ++r) {
      if (runs[r].objective > runs[best].objective + 1e-9) best = r;
      cpu += runs[r].cpu_seconds;
    }
    emit(solution_json(runs[best].best, inst, sc,
                       {{"seed", cfg.seed}, {"runs", cfg.runs}, {"iter_max", cfg.iter_max},
                        {"ell_max", cfg.ell_max}, {"lambda", lambda}, {"best_run", best}}),
         out);
    if (!trace_path.empty()) {
      std::ostringstream os;
      os << "iter,constructor,start,restart_best,global_best,improvements\n";
      for (const auto& t : runs[best].trace)
        os << t.iter << ',' << t.constructor << ',' << fixed(t.start) << ',' << fixed(t.restart_best) << ','
           << fixed(t.global_best) << ',' << t.improvements << '\n';
      emit(os.str(), trace_path);
    }
    std::cerr << "best " << fixed(runs[best].objective) << " (run " << best << ")";
    if (!no_timing) std::cerr << "  mean cpu " << fixed(cpu / static_cast<double>(runs.size())) << " s";
    std::cerr << '\n';
  });

  // check
  auto* check = app.add_subcommand("check", "validate a schedule and print its objective");
  add_common(check, true);
  check->callback([&] {
    const Instance inst = load_instance(find_instance(inst_path));
    const ScenarioConfig sc = flags.resolve(inst);
    const Schedule s = load_schedule(sol_path);
    const auto vs = check_feasibility(s, inst, sc);
    std::ostringstream os;
    if (vs.empty()) {
      os << "feasible objective " << fixed(net_benefit(s, inst, sc), 6) << '\n';
    } else {
      os << "infeasible " << vs.size() << " violation(s)\n";
      for (const auto& v : vs) os << "  " << v.render() << '\n';
      status = 1;
    }
    emit(os.str(), out);
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact optimum on tiny instances");
  add_common(oracle, false);
  OracleLimits limits;
  oracle->add_option("--max-cities", limits.max_cities)->capture_default_str();
  oracle->add_option("--max-days", limits.max_days)->capture_default_str();
  oracle->add_option("--max-states", limits.max_states)->capture_default_str();
  oracle->callback([&] {
    const Instance inst = load_instance(find_instance(inst_path));
    const ScenarioConfig sc = flags.resolve(inst);
    const OracleResult r = solve_exact(inst, sc, limits);
    emit(solution_json(r.schedule, inst, sc, {{"method", "oracle"}}), out);
  });

  // export-milp
  auto* exportm = app.add_subcommand("export-milp", "write the MILP model in LP format");
  add_common(exportm, false);
  exportm->callback([&] {
    const Instance inst = load_instance(find_instance(inst_path));
    emit(lp_text(build_model(inst, flags.resolve(inst))), out);
  });

  // warmstart
  auto* warm = app.add_subcommand("warmstart", "turn a schedule into a MIP start file");
  add_common(warm, true);
  bool zeros = false, verify = false;
  warm->add_flag("--zeros", zeros, "list zero-valued variables too");
  warm->add_flag("--verify", verify, "check the start against every row and report on stderr");
  warm->callback([&] {
    const Instance inst = load_instance(find_instance(inst_path));
    const ScenarioConfig sc = flags.resolve(inst);
    const MilpModel model = build_model(inst, sc);
    const auto a = schedule_to_assignment(model, load_schedule(sol_path), inst, sc);
    emit(mipstart_text(model, a, zeros), out);
    if (verify) {
      const auto chk = check_assignment(model, a);
      std::cerr << chk.violations.size() << " violated rows, objective " << fixed(chk.objective, 6) << '\n';
      for (const auto& v : chk.violations) std::cerr << "  " << v.row << " residual " << v.residual << '\n';
      if (!chk.violations.empty()) status = 1;
    }
  });

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark spec and write the CSV report");
  std::string spec_path, refs_path;
  bench->add_option("--spec", spec_path, "bench spec JSON")->required();
  bench->add_option("--references", refs_path, "reference objectives CSV (overrides the spec)");
  bench->add_option("--out,-o", out, "CSV output (stdout when omitted)");
  bench->add_flag("--serial", serial, "run replications one after another");
  bench->add_flag("--no-timing", no_timing, "leave the CPU column empty");
  bench->callback([&] {
    const BenchSpec spec = load_bench_spec(spec_path);
    ReferenceTable refs;
    if (!refs_path.empty()) refs = load_references(refs_path);
    else if (spec.references_path) refs = load_references(*spec.references_path);
    BenchOptions opts;
    opts.parallel = !serial;
    opts.timing = !no_timing;
    const auto records = run_bench(spec, refs, opts);
    emit(bench_csv(records), out);
    for (const auto& r : records)
      if (!r.error.empty()) {
        std::cerr << "error " << r.instance << '/' << r.scenario << ": " << r.error << '\n';
        status = 1;
      }
  });

  // report
  auto* report = app.add_subcommand("report", "print the daily tours of a schedule");
  add_common(report, true);
  report->callback([&] {
    const Instance inst = load_instance(find_instance(inst_path));
    emit(report_schedule(load_schedule(sol_path), inst, flags.resolve(inst)), out);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return status;
}
