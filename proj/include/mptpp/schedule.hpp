#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mptpp/instance.hpp"
#include "mptpp/scenario.hpp"

namespace mptpp {

struct DayTour {
  std::vector<CityId> route;    // route[0] is the wakeup city
  std::vector<CityId> meetings; // kept sorted ascending

  CityId wakeup() const { return route.front(); }
  CityId terminal() const { return route.back(); }
  bool meets(CityId c) const;
  bool visits(CityId c) const;
  bool operator==(const DayTour&) const = default;
};

struct Schedule {
  std::vector<DayTour> days;

  int m() const { return static_cast<int>(days.size()); }
  // Day t is 1-based.
  const DayTour& day(int t) const { return days.at(static_cast<std::size_t>(t - 1)); }
  bool operator==(const Schedule&) const = default;
};

enum class TourType { Type1, Type2, Type3 };

TourType tour_type(const DayTour& tour);
std::string to_string(TourType t);

// Number of distinct cities on the route.
int distinct_nodes(const DayTour& tour);

double tour_duration_minutes(const DayTour& tour, const Instance& inst);
double tour_travel_cost(const DayTour& tour, const Instance& inst);

enum class ViolationKind {
  DayCount,
  EmptyRoute,
  UnknownCity,
  SelfLoop,
  RepeatedVisit,
  MeetingNotOnRoute,
  RouteTooLong,
  ChainInfeasible,
  StartNotAtCapital,
  MaxTourDuration,
  CapitalReturn,
  MeetingCap,
  RepeatedMeetingSameDay,
  BigCityExclusivity,
  MaxMeetingsPerDay,
  MinDailyMeetings,
  EndAtCapital,
  ClosedAtCapital,
};

std::string to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  int day = 0; // 1-based, 0 when not tied to a day
  std::vector<CityId> cities;
  double measured = 0;
  double bound = 0;
  std::string render() const;
};

// Checks that only look at one day in isolation. Shared by the full checker
// and by incremental move evaluation.
void check_day_local(const DayTour& tour, int t, const Instance& inst,
                     const ScenarioConfig& sc, std::vector<Violation>& out);

std::vector<Violation> check_feasibility(const Schedule& s, const Instance& inst,
                                         const ScenarioConfig& sc);

bool is_feasible(const Schedule& s, const Instance& inst, const ScenarioConfig& sc);

// Days (1-based) on which the capital is the overnight city.
std::vector<bool> capital_nights(const Schedule& s, CityId capital);

// True when no run of kappa+1 consecutive nights inside the horizon lacks the capital.
bool capital_windows_ok(const std::vector<bool>& nights, int kappa);

struct SolutionMeta {
  std::string instance_name;
  std::optional<double> objective;
  std::string params_echo_json = "{}";
};

std::string encode(const Schedule& s, const SolutionMeta& meta = {});
Schedule decode(const std::string& text, SolutionMeta* meta = nullptr);
void normalize(DayTour& tour);

} // namespace mptpp
