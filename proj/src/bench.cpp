#include "mptpp/bench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "mptpp/error.hpp"
#include "mptpp/reward.hpp"

namespace mptpp {

using json = nlohmann::json;

double gap_percent(double reference, double obj) {
  if (reference == 0 || !std::isfinite(reference)) throw DomainError("gap needs a nonzero reference");
  return 100.0 * (reference - obj) / reference;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_number(const std::string& s, const std::string& what) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw ParseError("bad number for " + what + ": '" + s + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string cell(const std::optional<double>& v, int decimals) { return v ? fmt(*v, decimals) : std::string(); }

std::string csv_text(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

} // namespace

ReferenceTable parse_references(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty reference file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "instance,scenario,reference,proven,bks") throw ParseError("unexpected reference header: " + line);
  ReferenceTable out;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto f = split_csv_line(line);
    const std::string where = "line " + std::to_string(lineno);
    if (f.size() != 5) throw ParseError("reference " + where + " needs 5 fields");
    Reference r;
    r.value = parse_number(f[2], where);
    if (f[3] != "0" && f[3] != "1") throw ParseError("reference " + where + " proven must be 0 or 1");
    r.proven = f[3] == "1";
    if (!f[4].empty()) r.best_known = parse_number(f[4], where);
    try {
      parse_scenario(f[1]);
    } catch (const Error& e) {
      throw ParseError("reference " + where + ": " + e.what());
    }
    if (!out.emplace(std::make_pair(f[0], f[1]), r).second) throw ParseError("duplicate reference " + f[0]);
  }
  return out;
}

ReferenceTable load_references(const std::string& path) { return parse_references(read_file(path)); }

BenchSpec parse_bench_spec(const std::string& json_text, const std::string& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench spec: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("bench spec must be an object");
  static const char* known[] = {"instances", "scenarios", "reward_direction", "runs",      "seed",
                                "iter_max",  "ell_max",   "lambda",           "k_max",     "time_limit_s",
                                "references"};
  for (const auto& [k, v] : doc.items())
    if (std::find_if(std::begin(known), std::end(known), [&](const char* s) { return k == s; }) == std::end(known))
      throw ParseError("bench spec: unknown key " + k);
  auto resolve = [&](const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? p : (std::filesystem::path(base_dir) / path).lexically_normal().string();
  };
  BenchSpec spec;
  try {
    for (const auto& item : doc.at("instances")) {
      if (item.is_string()) {
        spec.instance_paths.push_back(resolve(item.get<std::string>()));
      } else {
        const auto& g = item.at("generate");
        spec.generated.push_back({g.at("n").get<int>(), g.at("m").get<int>(), g.value("seed", std::uint64_t{1})});
      }
    }
    if (doc.contains("scenarios")) {
      spec.scenarios.clear();
      for (const auto& s : doc["scenarios"]) spec.scenarios.push_back(parse_scenario(s.get<std::string>()));
    }
    if (doc.contains("reward_direction"))
      spec.direction = parse_reward_direction(doc["reward_direction"].get<std::string>());
    SearchConfig& c = spec.search;
    c.runs = doc.value("runs", c.runs);
    c.seed = doc.value("seed", c.seed);
    c.iter_max = doc.value("iter_max", c.iter_max);
    c.ell_max = doc.value("ell_max", c.ell_max);
    c.k_max = doc.value("k_max", c.k_max);
    if (doc.contains("lambda")) c.lambda = doc["lambda"].is_null() ? kNoFilter : doc["lambda"].get<double>();
    if (doc.contains("time_limit_s")) c.time_limit_s = doc["time_limit_s"].get<double>();
    if (doc.contains("references")) spec.references_path = resolve(doc["references"].get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench spec: ") + e.what());
  } catch (const DomainError& e) {
    throw ParseError(std::string("bench spec: ") + e.what());
  }
  return spec;
}

BenchSpec load_bench_spec(const std::string& path) {
  return parse_bench_spec(read_file(path), std::filesystem::path(path).parent_path().string());
}

std::vector<BenchRecord> run_bench(const BenchSpec& spec, const ReferenceTable& refs, const BenchOptions& opts) {
  std::vector<std::pair<std::string, std::optional<Instance>>> sources;
  std::vector<std::string> load_errors;
  for (const auto& p : spec.instance_paths) {
    try {
      sources.emplace_back(p, load_instance(p));
      load_errors.emplace_back();
    } catch (const Error& e) {
      sources.emplace_back(std::filesystem::path(p).stem().string(), std::nullopt);
      load_errors.emplace_back(e.what());
    }
  }
  for (const auto& g : spec.generated) {
    try {
      Instance inst = generate_instance(g.n, g.m, g.seed);
      sources.emplace_back(inst.name, std::move(inst));
      load_errors.emplace_back();
    } catch (const Error& e) {
      sources.emplace_back("G" + std::to_string(g.n) + "C-" + std::to_string(g.m) + "D", std::nullopt);
      load_errors.emplace_back(e.what());
    }
  }

  std::vector<BenchRecord> out;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const auto& [label, inst] = sources[k];
    for (ScenarioId id : spec.scenarios) {
      BenchRecord rec;
      rec.instance = inst ? inst->name : label;
      rec.scenario = to_string(id);
      rec.runs = spec.search.runs;
      if (!inst) {
        rec.error = load_errors[k];
        out.push_back(std::move(rec));
        continue;
      }
      try {
        const ScenarioConfig sc = apply_scenario(inst->params, id, spec.direction);
        const auto results = opts.parallel ? run_replications(*inst, sc, spec.search)
                                           : run_replications_serial(*inst, sc, spec.search);
        double best = -std::numeric_limits<double>::infinity(), sum = 0, cpu = 0;
        for (const auto& r : results) {
          best = std::max(best, r.objective);
          sum += r.objective;
          cpu += r.cpu_seconds;
        }
        rec.best = best;
        rec.mean = sum / static_cast<double>(results.size());
        if (opts.timing) rec.mean_cpu_s = cpu / static_cast<double>(results.size());
        const auto ref = refs.find({rec.instance, rec.scenario});
        if (ref != refs.end()) {
          rec.reference = ref->second.value;
          rec.gap_pct = gap_percent(ref->second.value, best);
        }
      } catch (const Error& e) {
        rec.error = e.what();
      }
      out.push_back(std::move(rec));
    }
  }
  return out;
}

const char* const kBenchHeader = "instance,scenario,runs,best,mean,mean_cpu_s,reference,gap_pct";

std::string bench_csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << kBenchHeader << '\n';
  for (const auto& r : records) {
    os << csv_text(r.instance) << ',' << r.scenario << ',' << r.runs << ',' << cell(r.best, 3) << ','
       << cell(r.mean, 3) << ',' << cell(r.mean_cpu_s, 3) << ',' << cell(r.reference, 3) << ','
       << cell(r.gap_pct, 1) << '\n';
  }
  return os.str();
}

std::string report_day(const DayTour& tour, const Instance& inst) {
  std::string out;
  for (std::size_t k = 0; k < tour.route.size(); ++k) {
    const CityId c = tour.route[k];
    if (k) out += " → ";
    out += inst.city(c).name;
    // a closed tour lists the capital twice; the meeting mark goes on the first
    const bool again = std::find(tour.route.begin(), tour.route.begin() + static_cast<long>(k), c) !=
                       tour.route.begin() + static_cast<long>(k);
    if (tour.meets(c) && !again) out += " (M)";
  }
  return out;
}

std::string report_schedule(const Schedule& s, const Instance& inst, const ScenarioConfig& sc) {
  std::ostringstream os;
  os << inst.name << " (" << to_string(sc.id) << ", " << s.m() << " days)\n";
  for (int t = 1; t <= s.m(); ++t)
    os << "Day " << t << ": " << report_day(s.day(t), inst) << "  [" << to_string(tour_type(s.day(t))) << "]\n";
  const RewardModel model = RewardModel::from(inst, sc);
  os << "reward " << fmt(reward_total(s, model, sc), 3) << "  travel " << fmt(travel_total(s, inst), 3)
     << "  net " << fmt(net_benefit(s, inst, sc), 3) << '\n';
  return os.str();
}

} // namespace mptpp
