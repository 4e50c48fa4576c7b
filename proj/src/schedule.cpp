#include "mptpp/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mptpp/error.hpp"

namespace mptpp {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {
constexpr double kTol = 1e-9;

std::vector<CityId> distinct_sorted(std::vector<CityId> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}
} // namespace

bool DayTour::meets(CityId c) const {
  return std::find(meetings.begin(), meetings.end(), c) != meetings.end();
}

bool DayTour::visits(CityId c) const {
  return std::find(route.begin(), route.end(), c) != route.end();
}

void normalize(DayTour& tour) { std::sort(tour.meetings.begin(), tour.meetings.end()); }

int distinct_nodes(const DayTour& tour) {
  return static_cast<int>(distinct_sorted(tour.route).size());
}

TourType tour_type(const DayTour& tour) {
  if (distinct_nodes(tour) <= 1) return TourType::Type2;
  if (tour.route.front() == tour.route.back()) return TourType::Type1;
  return TourType::Type3;
}

std::string to_string(TourType t) {
  switch (t) {
  case TourType::Type1: return "Type1";
  case TourType::Type2: return "Type2";
  case TourType::Type3: return "Type3";
  }
  return "Type3";
}

double tour_duration_minutes(const DayTour& tour, const Instance& inst) {
  double total = 0;
  for (CityId c : distinct_sorted(tour.meetings)) {
    if (!inst.has_city(c)) throw DomainError("unknown city " + std::to_string(c));
    total += inst.city(c).meeting_minutes;
  }
  for (std::size_t k = 0; k + 1 < tour.route.size(); ++k) {
    const CityId a = tour.route[k], b = tour.route[k + 1];
    if (!inst.has_city(a) || !inst.has_city(b)) throw DomainError("unknown city on route");
    total += inst.minutes(a, b);
  }
  return total;
}

double tour_travel_cost(const DayTour& tour, const Instance& inst) {
  double total = 0;
  for (std::size_t k = 0; k + 1 < tour.route.size(); ++k)
    total += inst.cost(tour.route[k], tour.route[k + 1]);
  return total;
}

std::string to_string(ViolationKind k) {
  switch (k) {
  case ViolationKind::DayCount: return "DayCount";
  case ViolationKind::EmptyRoute: return "EmptyRoute";
  case ViolationKind::UnknownCity: return "UnknownCity";
  case ViolationKind::SelfLoop: return "SelfLoop";
  case ViolationKind::RepeatedVisit: return "RepeatedVisit";
  case ViolationKind::MeetingNotOnRoute: return "MeetingNotOnRoute";
  case ViolationKind::RouteTooLong: return "RouteTooLong";
  case ViolationKind::ChainInfeasible: return "ChainInfeasible";
  case ViolationKind::StartNotAtCapital: return "StartNotAtCapital";
  case ViolationKind::MaxTourDuration: return "MaxTourDuration";
  case ViolationKind::CapitalReturn: return "CapitalReturn";
  case ViolationKind::MeetingCap: return "MeetingCap";
  case ViolationKind::RepeatedMeetingSameDay: return "RepeatedMeetingSameDay";
  case ViolationKind::BigCityExclusivity: return "BigCityExclusivity";
  case ViolationKind::MaxMeetingsPerDay: return "MaxMeetingsPerDay";
  case ViolationKind::MinDailyMeetings: return "MinDailyMeetings";
  case ViolationKind::EndAtCapital: return "EndAtCapital";
  case ViolationKind::ClosedAtCapital: return "ClosedAtCapital";
  }
  return "Unknown";
}

std::string Violation::render() const {
  std::ostringstream os;
  os << to_string(kind);
  if (day > 0) os << "@day" << day;
  if (!cities.empty()) {
    os << " cities=[";
    for (std::size_t k = 0; k < cities.size(); ++k) os << (k ? "," : "") << cities[k];
    os << "]";
  }
  if (measured != 0 || bound != 0) os << " measured=" << measured << " bound=" << bound;
  return os.str();
}

void check_day_local(const DayTour& tour, int t, const Instance& inst, const ScenarioConfig& sc,
                     std::vector<Violation>& out) {
  using VK = ViolationKind;
  if (tour.route.empty()) {
    out.push_back({VK::EmptyRoute, t, {}, 0, 0});
    return;
  }
  bool unknown = false;
  for (CityId c : tour.route)
    if (!inst.has_city(c)) { out.push_back({VK::UnknownCity, t, {c}, 0, 0}); unknown = true; }
  for (CityId c : tour.meetings)
    if (!inst.has_city(c)) { out.push_back({VK::UnknownCity, t, {c}, 0, 0}); unknown = true; }
  if (unknown) return;

  const auto& r = tour.route;
  const std::size_t len = r.size();
  for (std::size_t k = 0; k + 1 < len; ++k)
    if (r[k] == r[k + 1]) out.push_back({VK::SelfLoop, t, {r[k]}, 0, 0});
  for (std::size_t k = 1; k < len; ++k) {
    for (std::size_t j = 0; j + 1 < k; ++j) {
      if (r[j] != r[k]) continue;
      const bool closing = (k == len - 1 && j == 0 && len >= 3);
      if (!closing) out.push_back({VK::RepeatedVisit, t, {r[k]}, 0, 0});
    }
  }
  for (CityId c : tour.meetings)
    if (!tour.visits(c)) out.push_back({VK::MeetingNotOnRoute, t, {c}, 0, 0});
  const auto meets = distinct_sorted(tour.meetings);
  if (meets.size() != tour.meetings.size()) {
    auto sorted = tour.meetings;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 1; k < sorted.size(); ++k)
      if (sorted[k] == sorted[k - 1]) out.push_back({VK::RepeatedMeetingSameDay, t, {sorted[k]}, 0, 0});
  }
  const int alpha = sc.max_meetings_per_day;
  const int nodes = distinct_nodes(tour);
  if (nodes > alpha + 1) out.push_back({VK::RouteTooLong, t, {}, double(nodes), double(alpha + 1)});
  const double dur = tour_duration_minutes(tour, inst);
  if (dur > inst.params.max_tour_minutes + kTol)
    out.push_back({VK::MaxTourDuration, t, {}, dur, inst.params.max_tour_minutes});
  if (static_cast<int>(meets.size()) > alpha)
    out.push_back({VK::MaxMeetingsPerDay, t, {}, double(meets.size()), double(alpha)});
  std::vector<CityId> bigs;
  for (CityId c : meets)
    if (inst.city(c).size_class == SizeClass::big) bigs.push_back(c);
  if (bigs.size() > 1) out.push_back({VK::BigCityExclusivity, t, bigs, double(bigs.size()), 1});
  if (sc.require_daily_meeting && meets.empty()) out.push_back({VK::MinDailyMeetings, t, {}, 0, 1});
  if (sc.force_closed_at_capital) {
    const CityId cap = inst.params.capital_id;
    if (r.front() != cap || r.back() != cap) out.push_back({VK::ClosedAtCapital, t, {r.front(), r.back()}, 0, 0});
  }
}

std::vector<bool> capital_nights(const Schedule& s, CityId capital) {
  std::vector<bool> nights;
  for (const DayTour& d : s.days) nights.push_back(!d.route.empty() && d.terminal() == capital);
  return nights;
}

bool capital_windows_ok(const std::vector<bool>& nights, int kappa) {
  int run = 0;
  for (bool b : nights) {
    run = b ? 0 : run + 1;
    if (run > kappa) return false;
  }
  return true;
}

std::vector<Violation> check_feasibility(const Schedule& s, const Instance& inst,
                                         const ScenarioConfig& sc) {
  using VK = ViolationKind;
  std::vector<Violation> out;
  const int m = inst.params.days;
  if (s.m() != m) {
    out.push_back({VK::DayCount, 0, {}, double(s.m()), double(m)});
    return out;
  }
  for (int t = 1; t <= m; ++t) check_day_local(s.day(t), t, inst, sc, out);
  for (const auto& v : out)
    if (v.kind == VK::EmptyRoute || v.kind == VK::UnknownCity) return out;

  const CityId cap = inst.params.capital_id;
  if (s.day(1).wakeup() != cap) out.push_back({VK::StartNotAtCapital, 1, {s.day(1).wakeup()}, 0, 0});
  for (int t = 2; t <= m; ++t)
    if (s.day(t).wakeup() != s.day(t - 1).terminal())
      out.push_back({VK::ChainInfeasible, t, {s.day(t - 1).terminal(), s.day(t).wakeup()}, 0, 0});

  if (sc.kappa_enabled) {
    const auto nights = capital_nights(s, cap);
    const int k = sc.kappa;
    for (int t0 = 1; t0 + k <= m; ++t0) {
      bool hit = false;
      for (int t = t0; t <= t0 + k; ++t) hit = hit || nights[static_cast<std::size_t>(t - 1)];
      if (!hit) out.push_back({VK::CapitalReturn, t0, {cap}, double(k + 1), double(k)});
    }
  }

  std::vector<int> count(static_cast<std::size_t>(inst.n()) + 1, 0);
  for (const DayTour& d : s.days)
    for (CityId c : distinct_sorted(d.meetings)) ++count[static_cast<std::size_t>(c)];
  for (const City& c : inst.cities) {
    const int cap_c = sc.meeting_caps.of(c.size_class);
    if (count[c.id] > cap_c) out.push_back({VK::MeetingCap, 0, {c.id}, double(count[c.id]), double(cap_c)});
  }
  if (sc.end_at_capital && s.day(m).terminal() != cap)
    out.push_back({VK::EndAtCapital, m, {s.day(m).terminal()}, 0, 0});
  return out;
}

bool is_feasible(const Schedule& s, const Instance& inst, const ScenarioConfig& sc) {
  return check_feasibility(s, inst, sc).empty();
}

// ---------------------------------------------------------------- JSON

std::string encode(const Schedule& s, const SolutionMeta& meta) {
  std::ostringstream os;
  os << "{\n  \"instance\": " << ordered_json(meta.instance_name).dump() << ",\n";
  os << "  \"days\": [\n";
  for (std::size_t k = 0; k < s.days.size(); ++k) {
    ordered_json d;
    d["route"] = s.days[k].route;
    d["meetings"] = s.days[k].meetings;
    os << "    " << d.dump() << (k + 1 < s.days.size() ? ",\n" : "\n");
  }
  os << "  ]";
  if (meta.objective) os << ",\n  \"objective\": " << ordered_json(*meta.objective).dump();
  os << ",\n  \"params_echo\": " << ordered_json::parse(meta.params_echo_json).dump() << "\n}\n";
  return os.str();
}

Schedule decode(const std::string& text, SolutionMeta* meta) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("solution: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("solution: expected object");
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    const auto& k = it.key();
    if (k != "instance" && k != "days" && k != "objective" && k != "params_echo")
      throw ParseError("solution." + k + ": unknown key");
  }
  if (!doc.contains("days") || !doc["days"].is_array()) throw ParseError("solution.days: expected array");
  Schedule s;
  const auto& days = doc["days"];
  for (std::size_t t = 0; t < days.size(); ++t) {
    const std::string at = "solution.days[" + std::to_string(t) + "]";
    const auto& d = days[t];
    if (!d.is_object()) throw ParseError(at + ": expected object");
    for (auto it = d.begin(); it != d.end(); ++it)
      if (it.key() != "route" && it.key() != "meetings") throw ParseError(at + "." + it.key() + ": unknown key");
    if (!d.contains("route") || !d["route"].is_array()) throw ParseError(at + ".route: expected array");
    DayTour tour;
    for (const auto& v : d["route"]) {
      if (!v.is_number_integer()) throw ParseError(at + ".route: expected integer ids");
      tour.route.push_back(v.get<int>());
    }
    if (tour.route.empty()) throw ParseError(at + ".route: empty");
    if (d.contains("meetings")) {
      if (!d["meetings"].is_array()) throw ParseError(at + ".meetings: expected array");
      for (const auto& v : d["meetings"]) {
        if (!v.is_number_integer()) throw ParseError(at + ".meetings: expected integer ids");
        const int c = v.get<int>();
        if (!tour.visits(c))
          throw ParseError(at + ".meetings: city " + std::to_string(c) + " is not on the route");
        tour.meetings.push_back(c);
      }
    }
    normalize(tour);
    s.days.push_back(std::move(tour));
  }
  if (meta) {
    meta->instance_name = doc.contains("instance") && doc["instance"].is_string()
                              ? doc["instance"].get<std::string>() : "";
    if (doc.contains("objective") && doc["objective"].is_number())
      meta->objective = doc["objective"].get<double>();
    meta->params_echo_json = doc.contains("params_echo") ? doc["params_echo"].dump() : "{}";
  }
  return s;
}

} // namespace mptpp
