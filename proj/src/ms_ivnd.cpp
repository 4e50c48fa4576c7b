#include <chrono>
#include <ctime>

#include "mptpp/error.hpp"
#include "mptpp/search.hpp"

namespace mptpp {

namespace {

double thread_cpu_seconds() {
  timespec ts{};
  clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<double>(ts.tv_sec) + static_cast<double>(ts.tv_nsec) * 1e-9;
}

void check_config(const SearchConfig& cfg) {
  if (cfg.iter_max < 1) throw DomainError("iter_max must be >= 1");
  if (cfg.ell_max < 1) throw DomainError("ell_max must be >= 1");
  if (!(cfg.lambda > 0)) throw DomainError("lambda must be > 0");
  if (cfg.k_max < 1) throw DomainError("k_max must be >= 1");
  if (cfg.runs < 1) throw DomainError("runs must be >= 1");
}

void add_stats(SearchStats& into, const SearchStats& s) {
  into.evaluations += s.evaluations;
  for (int k = 0; k < 4; ++k) into.accepted[k] += s.accepted[k];
}

} // namespace

void vnd(SearchState& st, const SearchConfig& cfg) {
  int k = 1, fails = 0;
  while (fails < cfg.k_max) {
    const int kk = ((k - 1) % 4) + 1;
    if (auto mv = best_move(st, kk, cfg.lambda)) {
      st.apply(*mv);
      ++st.stats().accepted[kk - 1];
      k = 1;
      fails = 0;
    } else {
      ++k;
      ++fails;
    }
  }
}

SearchResult ms_ivnd(const Instance& inst, const ScenarioConfig& sc, const SearchConfig& cfg) {
  check_config(cfg);
  const double cpu0 = thread_cpu_seconds();
  const auto wall0 = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (!cfg.time_limit_s) return false;
    const std::chrono::duration<double> el = std::chrono::steady_clock::now() - wall0;
    return el.count() >= *cfg.time_limit_s;
  };

  Rng rng(cfg.seed);
  SearchResult res;
  bool have_best = false;
  std::optional<Schedule> escc_local; // ESCC is deterministic, descend from it once

  for (int iter = 1; iter <= cfg.iter_max; ++iter) {
    const bool odd = iter % 2 == 1;
    std::optional<SearchState> st;
    if (odd && escc_local) {
      st.emplace(inst, sc, *escc_local);
    } else {
      st.emplace(inst, sc, odd ? escc(inst, sc, cfg.constructor) : shrc(inst, sc, rng));
      vnd(*st, cfg);
      if (odd) escc_local = st->schedule();
    }
    TraceRow row;
    row.iter = iter;
    row.constructor = odd ? "ESCC" : "SHRC";
    row.start = st->objective();
    Schedule best = st->schedule();
    double best_obj = st->objective();

    int ell = 0;
    while (ell < cfg.ell_max && !out_of_time()) {
      SearchState trial(inst, sc, best);
      if (auto mv = perturb(trial, rng, cfg.lambda, cfg.perturb_attempts)) trial.apply(*mv);
      vnd(trial, cfg);
      add_stats(res.stats, trial.stats());
      if (trial.objective() > best_obj + 1e-9) {
        best = trial.schedule();
        best_obj = trial.objective();
        ell = 0;
        ++row.improvements;
      } else {
        ++ell;
      }
    }
    add_stats(res.stats, st->stats());
    if (!have_best || best_obj > res.objective + 1e-9) {
      res.best = best;
      res.objective = best_obj;
      have_best = true;
    }
    row.restart_best = best_obj;
    row.global_best = res.objective;
    res.trace.push_back(row);
    if (out_of_time()) break;
  }
  res.cpu_seconds = thread_cpu_seconds() - cpu0;
  return res;
}

std::vector<SearchResult> run_replications(const Instance& inst, const ScenarioConfig& sc,
                                           const SearchConfig& cfg) {
  check_config(cfg);
  std::vector<SearchResult> out(static_cast<std::size_t>(cfg.runs));
  std::vector<std::string> errors(out.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (int r = 0; r < cfg.runs; ++r) {
    SearchConfig c = cfg;
    c.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
    try {
      out[static_cast<std::size_t>(r)] = ms_ivnd(inst, sc, c);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(r)] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw ConstructionError(e);
  return out;
}

std::vector<SearchResult> run_replications_serial(const Instance& inst, const ScenarioConfig& sc,
                                                  const SearchConfig& cfg) {
  check_config(cfg);
  std::vector<SearchResult> out;
  for (int r = 0; r < cfg.runs; ++r) {
    SearchConfig c = cfg;
    c.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
    out.push_back(ms_ivnd(inst, sc, c));
  }
  return out;
}

} // namespace mptpp
