#include "mptpp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mptpp/error.hpp"
#include "mptpp/rng.hpp"

namespace mptpp {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

int criticality_factor(Criticality c) {
  switch (c) {
  case Criticality::noncritical: return 2;
  case Criticality::negative_critical: return 3;
  case Criticality::positive_critical: return 4;
  case Criticality::pos_neg_critical: return 5;
  }
  return 2;
}

std::string to_string(Criticality c) {
  switch (c) {
  case Criticality::noncritical: return "noncritical";
  case Criticality::negative_critical: return "negative_critical";
  case Criticality::positive_critical: return "positive_critical";
  case Criticality::pos_neg_critical: return "pos_neg_critical";
  }
  return "noncritical";
}

std::string to_string(SizeClass s) {
  switch (s) {
  case SizeClass::big: return "big";
  case SizeClass::midsize: return "midsize";
  case SizeClass::small: return "small";
  }
  return "small";
}

std::string to_string(RewardDirection d) {
  return d == RewardDirection::front_loaded ? "front_loaded" : "back_loaded";
}

Criticality parse_criticality(const std::string& s) {
  if (s == "noncritical") return Criticality::noncritical;
  if (s == "negative_critical") return Criticality::negative_critical;
  if (s == "positive_critical") return Criticality::positive_critical;
  if (s == "pos_neg_critical") return Criticality::pos_neg_critical;
  throw ParseError("unknown criticality '" + s + "'");
}

SizeClass parse_size_class(const std::string& s) {
  if (s == "big") return SizeClass::big;
  if (s == "midsize") return SizeClass::midsize;
  if (s == "small") return SizeClass::small;
  throw ParseError("unknown size_class '" + s + "'");
}

RewardDirection parse_reward_direction(const std::string& s) {
  if (s == "front_loaded" || s == "front") return RewardDirection::front_loaded;
  if (s == "back_loaded" || s == "back") return RewardDirection::back_loaded;
  throw ParseError("unknown reward_direction '" + s + "'");
}

double derive_multiplier(const City& city, std::optional<int> population_rank) {
  if (!population_rank || *population_rank < 1)
    throw DomainError("no population rank for city " + std::to_string(city.id));
  if (*population_rank == 1) return 2.0;
  if (*population_rank <= 7) return 3.0;
  return 5.0;
}

double derive_base_reward(std::int64_t population, int cf, double multiplier,
                          std::int64_t min_pop) {
  if (min_pop <= 0) throw DomainError("min_population must be positive");
  if (population < 0) throw DomainError("population must be non-negative");
  if (cf < 2 || cf > 5) throw DomainError("criticality factor outside {2,3,4,5}");
  // round half away from zero on the exact rational population / min_pop
  const std::int64_t q = population / min_pop;
  const std::int64_t r = population % min_pop;
  const std::int64_t rounded = q + (2 * r >= min_pop ? 1 : 0);
  return cf * (100.0 + static_cast<double>(rounded) * multiplier);
}

std::vector<std::optional<int>> population_ranks(const Instance& inst) {
  std::vector<std::optional<int>> rank(static_cast<std::size_t>(inst.n()) + 1);
  std::vector<const City*> roots;
  for (const City& c : inst.cities)
    if (!c.parent_id) roots.push_back(&c);
  std::stable_sort(roots.begin(), roots.end(), [](const City* a, const City* b) {
    if (a->population != b->population) return a->population > b->population;
    return a->id < b->id;
  });
  for (std::size_t k = 0; k < roots.size(); ++k) rank[roots[k]->id] = static_cast<int>(k) + 1;
  for (const City& c : inst.cities) {
    if (!c.parent_id || !inst.has_city(*c.parent_id)) continue;
    rank[c.id] = rank[*c.parent_id];
  }
  return rank;
}

void derive_rewards(Instance& inst) {
  const auto ranks = population_ranks(inst);
  for (City& c : inst.cities) {
    if (c.reward_overridden || c.parent_id) continue;
    c.base_reward = derive_base_reward(c.population, c.cf(), derive_multiplier(c, ranks[c.id]),
                                       inst.params.min_population);
  }
  for (City& c : inst.cities) {
    if (c.reward_overridden || !c.parent_id) continue;
    if (!inst.has_city(*c.parent_id))
      throw ValidationError("ParentMissing@city " + std::to_string(c.id));
    c.base_reward = inst.city(*c.parent_id).base_reward;
  }
}

namespace {

void check_matrix(const Matrix& mat, const std::string& label, int n,
                  std::vector<InstanceViolation>& out) {
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  if (mat.size() != dim) {
    out.push_back({"MatrixDimension", label + " rows=" + std::to_string(mat.size()) +
                                          " expected " + std::to_string(dim)});
    return;
  }
  for (std::size_t i = 0; i < dim; ++i) {
    if (mat[i].size() != dim) {
      out.push_back({"MatrixDimension", label + " row " + std::to_string(i) +
                                            " cols=" + std::to_string(mat[i].size()) +
                                            " expected " + std::to_string(dim)});
      return;
    }
  }
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      const double v = mat[i][j];
      const std::string at = label + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
      if (!std::isfinite(v)) out.push_back({"FiniteMatrix", at});
      else if (v < 0) out.push_back({"NonNegativeMatrix", at});
      else if (i == j && v != 0) out.push_back({"ZeroDiagonal", at});
      else if ((i == 0 || j == 0) && v != 0) out.push_back({"FictitiousArcZero", at});
    }
  }
}

std::vector<InstanceViolation> structural_violations(const Instance& inst) {
  std::vector<InstanceViolation> out;
  const CampaignParams& p = inst.params;
  if (p.days < 1) out.push_back({"DaysRange", "params.days"});
  if (p.max_meetings_per_day < 1) out.push_back({"AlphaRange", "params.max_meetings_per_day"});
  if (p.kappa < 1) out.push_back({"KappaRange", "params.kappa"});
  if (!(p.repeat_depreciation >= 1)) out.push_back({"RepeatDepreciationRange", "params.repeat_depreciation_K"});
  if (!(p.cost_normalizer >= 0)) out.push_back({"CostNormalizerRange", "params.cost_normalizer_Kbar"});
  if (!(p.max_tour_minutes > 0)) out.push_back({"MaxTourMinutesRange", "params.max_tour_minutes"});
  if (p.min_population <= 0) out.push_back({"MinPopulationRange", "params.min_population"});
  if (inst.cities.empty()) out.push_back({"AtLeastOneCity", "cities"});
  for (std::size_t k = 0; k < inst.cities.size(); ++k) {
    if (inst.cities[k].id != static_cast<int>(k) + 1) {
      out.push_back({"CityIdsContiguous", "cities[" + std::to_string(k) + "].id=" +
                                              std::to_string(inst.cities[k].id)});
      return out;
    }
  }
  if (!inst.has_city(p.capital_id)) out.push_back({"CapitalExists", "params.capital_id"});
  for (const City& c : inst.cities) {
    const std::string at = "city " + std::to_string(c.id);
    if (c.population < 0) out.push_back({"PopulationRange", at});
    if (!std::isfinite(c.meeting_minutes) || c.meeting_minutes < 0)
      out.push_back({"MeetingMinutesRange", at});
    if (c.parent_id) {
      if (!inst.has_city(*c.parent_id)) out.push_back({"ParentExists", at});
      else if (*c.parent_id == c.id) out.push_back({"ParentNotSelf", at});
      else if (inst.city(*c.parent_id).parent_id) out.push_back({"ParentNotTown", at});
    }
  }
  check_matrix(inst.travel.cost, "travel_cost", inst.n(), out);
  check_matrix(inst.travel.minutes, "travel_minutes", inst.n(), out);
  return out;
}

std::string join(const std::vector<InstanceViolation>& vs) {
  std::string s;
  for (const auto& v : vs) s += (s.empty() ? "" : "; ") + v.render();
  return s;
}

} // namespace

std::vector<InstanceViolation> validate(const Instance& inst) {
  auto out = structural_violations(inst);
  if (!out.empty()) return out;
  for (const City& c : inst.cities) {
    const std::string at = "city " + std::to_string(c.id);
    if (!(c.base_reward > 0)) out.push_back({"BaseRewardPositive", at});
    if (c.parent_id && c.base_reward != inst.city(*c.parent_id).base_reward)
      out.push_back({"TownInheritsReward", at});
  }
  return out;
}

// ---------------------------------------------------------------- JSON

namespace {

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "." + key + ": missing");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || it.key() == a;
    if (!ok) throw ParseError(where + "." + it.key() + ": unknown key");
  }
}

std::int64_t as_int(const json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::floor(d) == d && std::abs(d) < 9e15) return static_cast<std::int64_t>(d);
  }
  throw ParseError(where + ": expected integer");
}

double as_num(const json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected number");
  return v.get<double>();
}

bool as_bool(const json& v, const std::string& where) {
  if (!v.is_boolean()) throw ParseError(where + ": expected boolean");
  return v.get<bool>();
}

std::string as_str(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected string");
  return v.get<std::string>();
}

Matrix as_matrix(const json& v, const std::string& where) {
  if (!v.is_array()) throw ParseError(where + ": expected array of rows");
  Matrix m;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!v[i].is_array()) throw ParseError(at + ": expected array");
    std::vector<double> row;
    for (std::size_t j = 0; j < v[i].size(); ++j)
      row.push_back(as_num(v[i][j], at + "[" + std::to_string(j) + "]"));
    m.push_back(std::move(row));
  }
  return m;
}

ordered_json num(double v) {
  if (std::isfinite(v) && std::floor(v) == v && std::abs(v) < 9e15)
    return static_cast<std::int64_t>(v);
  return v;
}

} // namespace

Instance instance_from_json_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  reject_unknown(doc, {"name", "params", "cities", "travel_cost", "travel_minutes"}, "instance");
  Instance inst;
  inst.name = as_str(need(doc, "name", "instance"), "instance.name");

  const json& p = need(doc, "params", "instance");
  reject_unknown(p,
                 {"days", "capital_id", "max_tour_minutes", "max_meetings_per_day", "kappa",
                  "repeat_depreciation_K", "cost_normalizer_Kbar", "min_population",
                  "reward_direction", "require_daily_meeting", "end_at_capital"},
                 "params");
  CampaignParams& cp = inst.params;
  cp.days = static_cast<int>(as_int(need(p, "days", "params"), "params.days"));
  cp.capital_id = static_cast<int>(as_int(need(p, "capital_id", "params"), "params.capital_id"));
  cp.max_tour_minutes = as_num(need(p, "max_tour_minutes", "params"), "params.max_tour_minutes");
  cp.max_meetings_per_day = static_cast<int>(
      as_int(need(p, "max_meetings_per_day", "params"), "params.max_meetings_per_day"));
  cp.kappa = static_cast<int>(as_int(need(p, "kappa", "params"), "params.kappa"));
  cp.min_population = as_int(need(p, "min_population", "params"), "params.min_population");
  if (p.contains("repeat_depreciation_K"))
    cp.repeat_depreciation = as_num(p["repeat_depreciation_K"], "params.repeat_depreciation_K");
  if (p.contains("cost_normalizer_Kbar"))
    cp.cost_normalizer = as_num(p["cost_normalizer_Kbar"], "params.cost_normalizer_Kbar");
  if (p.contains("reward_direction"))
    cp.reward_direction = parse_reward_direction(as_str(p["reward_direction"], "params.reward_direction"));
  if (p.contains("require_daily_meeting"))
    cp.require_daily_meeting = as_bool(p["require_daily_meeting"], "params.require_daily_meeting");
  if (p.contains("end_at_capital"))
    cp.end_at_capital = as_bool(p["end_at_capital"], "params.end_at_capital");

  const json& cs = need(doc, "cities", "instance");
  if (!cs.is_array()) throw ParseError("instance.cities: expected array");
  for (std::size_t k = 0; k < cs.size(); ++k) {
    const std::string at = "cities[" + std::to_string(k) + "]";
    const json& c = cs[k];
    reject_unknown(c,
                   {"id", "name", "population", "criticality", "size_class", "meeting_minutes",
                    "parent_id", "base_reward"},
                   at);
    City city;
    city.id = static_cast<int>(as_int(need(c, "id", at), at + ".id"));
    city.name = as_str(need(c, "name", at), at + ".name");
    city.population = as_int(need(c, "population", at), at + ".population");
    city.criticality = parse_criticality(as_str(need(c, "criticality", at), at + ".criticality"));
    city.size_class = parse_size_class(as_str(need(c, "size_class", at), at + ".size_class"));
    city.meeting_minutes = as_num(need(c, "meeting_minutes", at), at + ".meeting_minutes");
    if (c.contains("parent_id") && !c["parent_id"].is_null())
      city.parent_id = static_cast<int>(as_int(c["parent_id"], at + ".parent_id"));
    if (c.contains("base_reward") && !c["base_reward"].is_null()) {
      city.base_reward = as_num(c["base_reward"], at + ".base_reward");
      city.reward_overridden = true;
    }
    inst.cities.push_back(std::move(city));
  }
  std::stable_sort(inst.cities.begin(), inst.cities.end(),
                   [](const City& a, const City& b) { return a.id < b.id; });
  inst.travel.cost = as_matrix(need(doc, "travel_cost", "instance"), "travel_cost");
  inst.travel.minutes = as_matrix(need(doc, "travel_minutes", "instance"), "travel_minutes");

  if (auto vs = structural_violations(inst); !vs.empty()) throw ValidationError(join(vs));
  derive_rewards(inst);
  if (auto vs = validate(inst); !vs.empty()) throw ValidationError(join(vs));
  return inst;
}

std::string instance_to_json_text(const Instance& inst) {
  const CampaignParams& p = inst.params;
  ordered_json params;
  params["days"] = p.days;
  params["capital_id"] = p.capital_id;
  params["max_tour_minutes"] = num(p.max_tour_minutes);
  params["max_meetings_per_day"] = p.max_meetings_per_day;
  params["kappa"] = p.kappa;
  params["repeat_depreciation_K"] = num(p.repeat_depreciation);
  params["cost_normalizer_Kbar"] = num(p.cost_normalizer);
  params["min_population"] = p.min_population;
  params["reward_direction"] = to_string(p.reward_direction);
  params["require_daily_meeting"] = p.require_daily_meeting;
  params["end_at_capital"] = p.end_at_capital;

  std::ostringstream os;
  os << "{\n  \"name\": " << ordered_json(inst.name).dump() << ",\n";
  os << "  \"params\": " << params.dump() << ",\n";
  os << "  \"cities\": [\n";
  for (std::size_t k = 0; k < inst.cities.size(); ++k) {
    const City& c = inst.cities[k];
    ordered_json o;
    o["id"] = c.id;
    o["name"] = c.name;
    o["population"] = c.population;
    o["criticality"] = to_string(c.criticality);
    o["size_class"] = to_string(c.size_class);
    o["meeting_minutes"] = num(c.meeting_minutes);
    o["parent_id"] = c.parent_id ? ordered_json(*c.parent_id) : ordered_json(nullptr);
    o["base_reward"] = c.reward_overridden ? num(c.base_reward) : ordered_json(nullptr);
    os << "    " << o.dump() << (k + 1 < inst.cities.size() ? ",\n" : "\n");
  }
  os << "  ],\n";
  auto matrix = [&](const char* key, const Matrix& m, bool last) {
    os << "  \"" << key << "\": [\n";
    for (std::size_t i = 0; i < m.size(); ++i) {
      ordered_json row = ordered_json::array();
      for (double v : m[i]) row.push_back(num(v));
      os << "    " << row.dump() << (i + 1 < m.size() ? ",\n" : "\n");
    }
    os << "  ]" << (last ? "\n" : ",\n");
  };
  matrix("travel_cost", inst.travel.cost, false);
  matrix("travel_minutes", inst.travel.minutes, true);
  os << "}\n";
  return os.str();
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read instance file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return instance_from_json_text(ss.str());
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << instance_to_json_text(inst);
}

// ---------------------------------------------------------------- generator

Instance generate_instance(int n, int m, std::uint64_t seed, const GenerateOptions& opts) {
  if (n < 3) throw DomainError("generate_instance needs n >= 3 to mix big, midsize and small cities");
  if (m < 1) throw DomainError("generate_instance needs m >= 1");
  Rng rng(seed);
  Instance inst;
  inst.name = "G" + std::to_string(n) + "C-" + std::to_string(m) + "D-s" + std::to_string(seed);
  CampaignParams& p = inst.params;
  p.days = m;
  p.capital_id = 1;
  p.max_tour_minutes = opts.max_tour_minutes;
  p.max_meetings_per_day = opts.max_meetings_per_day;
  p.kappa = opts.kappa;

  const std::vector<double> crit_weights{42, 19, 11, 9};
  std::vector<std::pair<double, double>> xy;
  for (int k = 1; k <= n; ++k) {
    City c;
    c.id = k;
    c.name = "City" + std::to_string(k);
    SizeClass cls;
    if (k == 1) cls = SizeClass::big;
    else if (k == 2) cls = SizeClass::midsize;
    else if (k == 3) cls = SizeClass::small;
    else {
      const double u = rng.unit();
      cls = u < 0.1 ? SizeClass::big : (u < 0.4 ? SizeClass::midsize : SizeClass::small);
    }
    c.size_class = cls;
    switch (cls) {
    case SizeClass::big:
      c.population = rng.between(3000000, 15000000);
      c.meeting_minutes = 120;
      break;
    case SizeClass::midsize:
      c.population = rng.between(1000000, 2999999);
      c.meeting_minutes = 90;
      break;
    case SizeClass::small:
      c.population = rng.between(p.min_population, 999999);
      c.meeting_minutes = 60;
      break;
    }
    c.criticality = static_cast<Criticality>(rng.roulette(crit_weights));
    const double x = rng.unit() * opts.spread.width;
    const double y = rng.unit() * opts.spread.height;
    xy.emplace_back(x, y);
    inst.cities.push_back(std::move(c));
  }
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  inst.travel.cost.assign(dim, std::vector<double>(dim, 0.0));
  inst.travel.minutes.assign(dim, std::vector<double>(dim, 0.0));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const double d = std::hypot(xy[i - 1].first - xy[j - 1].first, xy[i - 1].second - xy[j - 1].second);
      inst.travel.minutes[i][j] = std::floor(d * opts.spread.minutes_per_unit + 0.5);
      inst.travel.cost[i][j] = std::floor(d * opts.spread.cost_per_unit + 0.5);
    }
  }
  derive_rewards(inst);
  return inst;
}

} // namespace mptpp
