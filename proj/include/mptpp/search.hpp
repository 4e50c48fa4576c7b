#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mptpp/constructors.hpp"
#include "mptpp/reward.hpp"
#include "mptpp/rng.hpp"
#include "mptpp/walk.hpp"

namespace mptpp {

inline constexpr double kNoFilter = std::numeric_limits<double>::infinity();

struct SearchConfig {
  int iter_max = 100;
  int ell_max = 50;
  double lambda = 0.75; // kNoFilter disables the granular filter
  int k_max = 4;
  int runs = 10;
  int perturb_attempts = 20;
  std::uint64_t seed = 1;
  std::optional<double> time_limit_s; // per run
  ConstructorConfig constructor;
};

// Insertion of u between j and k (k == 0: end of walk) is admissible when u
// is close to one of them relative to the arc it breaks.
bool granular_admissible(const Instance& inst, CityId u, CityId j, CityId k, double lambda);

enum class MoveKind { swap_inter, drop_add, replace, swap_intra, reattribute, perturb_swap2, perturb_replace2, perturb_relocate };
std::string to_string(MoveKind k);

struct MoveCandidate {
  MoveKind kind = MoveKind::swap_inter;
  std::vector<int> days; // changed 0-based days, ascending
  std::vector<DayTour> before;
  std::vector<DayTour> after;
  double delta = 0;
};

struct SearchStats {
  long evaluations = 0;
  long accepted[4] = {0, 0, 0, 0}; // per neighborhood N1..N4
};

// Schedule plus cached objective pieces so a move is priced from the days it changes.
class SearchState {
public:
  SearchState(const Instance& inst, const ScenarioConfig& sc, Schedule s);

  const Instance& instance() const { return *inst_; }
  const ScenarioConfig& scenario() const { return sc_; }
  const RewardModel& model() const { return model_; }
  const Schedule& schedule() const { return s_; }
  const Walk& walk() const { return walk_; }
  double objective() const { return objective_; }
  // Reward currently earned by the meeting at city c on 0-based day d.
  double meeting_value(CityId c, int d) const;
  bool routed(CityId c) const { return visit_count_[static_cast<std::size_t>(c)] > 0; }

  struct Eval {
    bool feasible = false;
    double delta = 0;
  };
  // Prices replacing the listed days by `tours`; does not modify the state.
  Eval evaluate(const std::vector<int>& days, const std::vector<DayTour>& tours) const;

  void apply(const MoveCandidate& mv);
  void revert(const MoveCandidate& mv);

  SearchStats& stats() { return stats_; }
  const SearchStats& stats() const { return stats_; }

private:
  void set_days(const std::vector<int>& days, const std::vector<DayTour>& tours);
  void rebuild();

  const Instance* inst_;
  ScenarioConfig sc_;
  RewardModel model_;
  Schedule s_;
  Walk walk_;
  double objective_ = 0;
  std::vector<std::vector<int>> meet_days_; // 1-based days per city
  std::vector<double> city_reward_;
  std::vector<double> day_cost_;
  std::vector<int> visit_count_;
  std::vector<bool> nights_;
  mutable SearchStats stats_;
};

// Best improving move of neighborhood k (1..4), or nothing. An empty lambda
// skips the granular test entirely.
std::optional<MoveCandidate> best_move(SearchState& st, int k, std::optional<double> lambda);

// Random perturbation; returns nothing when every attempt failed.
std::optional<MoveCandidate> perturb(SearchState& st, Rng& rng, double lambda, int attempts = 20);

void vnd(SearchState& st, const SearchConfig& cfg);

struct TraceRow {
  int iter = 0;
  std::string constructor;
  double start = 0;       // after the first descent
  double restart_best = 0;
  double global_best = 0;
  int improvements = 0;
};

struct SearchResult {
  Schedule best;
  double objective = 0;
  std::vector<TraceRow> trace;
  SearchStats stats;
  double cpu_seconds = 0;
};

SearchResult ms_ivnd(const Instance& inst, const ScenarioConfig& sc, const SearchConfig& cfg);

// Independent runs seeded with derive_seed(cfg.seed, r).
std::vector<SearchResult> run_replications(const Instance& inst, const ScenarioConfig& sc,
                                           const SearchConfig& cfg);
// Same, one run after another on the calling thread.
std::vector<SearchResult> run_replications_serial(const Instance& inst, const ScenarioConfig& sc,
                                                  const SearchConfig& cfg);

} // namespace mptpp
