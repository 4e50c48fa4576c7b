#include "mptpp/milp.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "mptpp/error.hpp"
#include "mptpp/reward.hpp"

namespace mptpp {

int MilpModel::var(const std::string& name) const {
  const auto it = index.find(name);
  if (it == index.end()) throw DomainError("unknown model variable " + name);
  return it->second;
}

long MilpModel::count(VarFamily f) const {
  return std::count_if(vars.begin(), vars.end(), [f](const MilpVar& v) { return v.family == f; });
}

long MilpModel::rows_with_tag(const std::string& tag) const {
  return std::count_if(rows.begin(), rows.end(), [&](const MilpRow& r) { return r.tag == tag; });
}

ModelCounts expected_counts(int n, int m, ScenarioId scenario) {
  const long N = n + 1;
  ModelCounts c;
  c.x = N * n * m;
  c.per_node_day = N * m;
  if (scenario != ScenarioId::full_1meet) {
    c.r_registered = N * m * m;
    c.r_free = N * m * (m - 1) / 2;
  }
  return c;
}

namespace {

std::string fmt(double v) {
  if (v == 0) return "0";
  if (std::nearbyint(v) == v && std::abs(v) < 1e15) return std::to_string(static_cast<long long>(v));
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string join(std::initializer_list<int> xs) {
  std::string s;
  for (int x : xs) s += "_" + std::to_string(x);
  return s;
}

class Builder {
public:
  Builder(const Instance& inst, const ScenarioConfig& sc) : inst_(inst), sc_(sc) {
    M.n = inst.n();
    M.m = inst.params.days;
    M.scenario = sc.id;
    M.instance_name = inst.name;
    n_ = M.n;
    m_ = M.m;
    alpha_ = sc.max_meetings_per_day;
    with_r_ = sc.id != ScenarioId::full_1meet;
    cap_ = inst.params.capital_id;
  }

  MilpModel build() {
    register_vars();
    build_objective();
    build_rows();
    return std::move(M);
  }

private:
  // ---------------------------------------------------------------- registry
  int add(const std::string& name, VarFamily f, bool binary = true) {
    const int id = static_cast<int>(M.vars.size());
    M.vars.push_back({name, f, binary});
    M.index.emplace(name, id);
    return id;
  }

  void register_vars() {
    const int N = n_ + 1;
    x_.assign(static_cast<std::size_t>(m_ + 1), std::vector<std::vector<int>>(N, std::vector<int>(N, -1)));
    for (int t = 1; t <= m_; ++t)
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (i != j) x_[t][i][j] = add("X" + join({i, j, t}), VarFamily::X);
    auto per = [&](const char* p, VarFamily f, std::vector<std::vector<int>>& into, bool binary) {
      into.assign(N, std::vector<int>(static_cast<std::size_t>(m_ + 1), -1));
      for (int i = 0; i < N; ++i)
        for (int t = 1; t <= m_; ++t) into[i][t] = add(p + join({i, t}), f, binary);
    };
    per("L", VarFamily::L, l_, true);
    per("E", VarFamily::E, e_, true);
    per("S", VarFamily::S, s_, true);
    per("Z", VarFamily::Z, z_, true);
    per("FM", VarFamily::FM, fm_, true);
    per("U", VarFamily::U, u_, false);
    if (with_r_) {
      r_.assign(N, std::vector<std::vector<int>>(static_cast<std::size_t>(m_ + 1), std::vector<int>(static_cast<std::size_t>(m_ + 1), -1)));
      for (int i = 0; i < N; ++i)
        for (int t = 1; t <= m_; ++t)
          for (int s = 1; s <= m_; ++s) r_[i][t][s] = add("R" + join({i, t, s}), VarFamily::R);
    }
  }

  // ---------------------------------------------------------------- objective
  void build_objective() {
    const double m = m_;
    const bool back = sc_.direction(inst_.params) == RewardDirection::back_loaded;
    const double K = inst_.params.repeat_depreciation;
    for (int i = 1; i <= n_; ++i) {
      const double pi = inst_.city(i).base_reward;
      for (int t = 1; t <= m_; ++t) {
        const double first = back ? pi * (t + m) / m : pi * (m - t + 1) / m;
        M.objective.push_back({with_r_ ? fm_[i][t] : z_[i][t], first});
        if (!with_r_) continue;
        for (int s = 1; s < t; ++s) {
          const double rep = back ? pi * s * (t + m) / (K * m * m) : pi * ((m - t + 1) / m) * (s / (K * m));
          M.objective.push_back({r_[i][t][s], rep});
        }
      }
    }
    if (sc_.travel_cost_weight != 0.0) {
      const double w = sc_.travel_cost_weight * inst_.params.cost_normalizer;
      for (int t = 1; t <= m_; ++t)
        for (int i = 0; i <= n_; ++i)
          for (int j = 0; j <= n_; ++j)
            if (i != j && inst_.cost(i, j) != 0) M.objective.push_back({x_[t][i][j], -w * inst_.cost(i, j)});
    }
    canon(M.objective);
  }

  // ---------------------------------------------------------------- rows
  static void canon(std::vector<LinTerm>& terms) {
    std::map<int, double> acc;
    for (const auto& t : terms) acc[t.var] += t.coef;
    terms.clear();
    for (const auto& [v, c] : acc)
      if (c != 0) terms.push_back({v, c});
  }

  void row(const std::string& tag, const std::string& suffix, std::vector<LinTerm> terms, char sense, double rhs) {
    canon(terms);
    if (terms.empty()) return;
    const std::string name = (tag[0] == 'B' ? tag : "c" + tag) + suffix;
    M.rows.push_back({tag, name, std::move(terms), sense, rhs});
  }

  std::vector<LinTerm> out_arcs(int i, int t, double c = 1) const {
    std::vector<LinTerm> v;
    for (int j = 0; j <= n_; ++j)
      if (j != i) v.push_back({x_[t][i][j], c});
    return v;
  }
  std::vector<LinTerm> in_arcs(int i, int t, double c = 1) const {
    std::vector<LinTerm> v;
    for (int j = 0; j <= n_; ++j)
      if (j != i) v.push_back({x_[t][j][i], c});
    return v;
  }
  static void append(std::vector<LinTerm>& a, const std::vector<LinTerm>& b) { a.insert(a.end(), b.begin(), b.end()); }
  double delta(int i) const { return i == cap_ ? 1.0 : 0.0; }
  std::vector<LinTerm> half_ends(int t) const {
    std::vector<LinTerm> v;
    for (int j = 0; j <= n_; ++j) {
      v.push_back({l_[j][t], 0.5});
      v.push_back({e_[j][t], 0.5});
    }
    return v;
  }

  void build_rows() {
    const int N = n_ + 1;
    const double A1 = alpha_ + 1, A2 = alpha_ + 2;
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) row("08", join({i, t}), out_arcs(i, t), '<', 1);
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) row("09", join({i, t}), in_arcs(i, t), '<', 1);
    for (int t = 1; t <= m_; ++t) {
      std::vector<LinTerm> v;
      for (int i = 1; i <= n_; ++i) v.push_back({z_[i][t], 1});
      row("10", join({t}), v, '<', alpha_);
    }
    if (sc_.require_daily_meeting)
      for (int t = 1; t <= m_; ++t) {
        std::vector<LinTerm> v;
        for (int i = 1; i <= n_; ++i) v.push_back({z_[i][t], 1});
        row("11", join({t}), v, '>', 1);
      }
    for (int t = 1; t <= m_; ++t) {
      std::vector<LinTerm> v;
      for (int i = 1; i <= n_; ++i) v.push_back({z_[i][t], inst_.city(i).meeting_minutes});
      for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
          if (i != j) v.push_back({x_[t][i][j], inst_.minutes(i, j)});
      row("12", join({t}), v, '<', inst_.params.max_tour_minutes);
    }
    for (int i = 1; i <= n_; ++i) row("13", join({i}), {{fm_[i][1], 1}, {z_[i][1], -1}}, '=', 0);
    for (int i = 1; i <= n_; ++i)
      for (int t = 2; t <= m_; ++t) row("14", join({i, t}), {{fm_[i][t], 1}, {z_[i][t], -1}}, '<', 0);
    for (int i = 1; i <= n_; ++i)
      for (int t = 2; t <= m_; ++t)
        for (int u = 1; u < t; ++u) row("15", join({i, t, u}), {{fm_[i][t], 1}, {z_[i][u], 1}}, '<', 1);
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) {
        auto v = out_arcs(i, t);
        append(v, in_arcs(i, t, -1));
        v.push_back({l_[i][t], -1});
        v.push_back({e_[i][t], 1});
        row("16", join({i, t}), v, '=', 0);
      }
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) row("17", join({i, t}), {{l_[i][t], 1}, {e_[i][t], 1}}, '<', 1);
    for (int t = 1; t <= m_; ++t) {
      std::vector<LinTerm> v;
      for (int i = 0; i < N; ++i) {
        v.push_back({l_[i][t], 1});
        v.push_back({e_[i][t], 1});
      }
      row("18", join({t}), v, '<', 2);
    }
    for (int i = 0; i < N; ++i)
      for (int t = 2; t <= m_; ++t) {
        std::vector<LinTerm> v{{s_[i][t - 1], 1}, {s_[i][t], -1}};
        for (auto x : half_ends(t)) v.push_back({x.var, -x.coef});
        row("19", join({i, t}), v, '<', 0);
      }
    for (int i = 0; i < N; ++i)
      for (int t = 2; t <= m_; ++t) {
        auto v = half_ends(t);
        v.push_back({s_[i][t - 1], 1});
        v.push_back({s_[i][t], -1});
        row("20", join({i, t}), v, '>', 0);
      }
    for (int i = 1; i <= n_; ++i)
      for (int t = 2; t <= m_; ++t)
        row("21", join({i, t}), {{s_[i][t - 1], 1}, {l_[i][t], -1}, {s_[i][t], -1}}, '<', 0);
    for (int t = 1; t <= m_; ++t) row("22", join({t}), {{s_[0][t], 1}}, '=', 0);
    for (int i = 1; i <= n_; ++i)
      for (int t = 1; t <= m_; ++t) row("23", join({i, t}), {{s_[i][t], 1}, {x_[t][i][0], -1}}, '>', 0);
    for (int i = 1; i <= n_; ++i)
      for (int t = 2; t <= m_; ++t) row("24", join({i, t}), {{s_[i][t - 1], 1}, {x_[t][i][0], -1}}, '>', 0);
    for (int i = 1; i <= n_; ++i)
      for (int t = 1; t <= m_; ++t) row("25", join({i, t}), {{x_[t][i][0], 1}, {x_[t][0][i], -1}}, '=', 0);
    for (int i = 1; i <= n_; ++i)
      for (int t = 1; t <= m_; ++t) row("26", join({i, t}), {{e_[i][t], 1}, {s_[i][t], -1}}, '<', 0);
    for (int i = 1; i <= n_; ++i)
      for (int t = 1; t < m_; ++t) {
        auto v = out_arcs(i, t + 1, -1);
        v.push_back({s_[i][t], 1});
        row("27", join({i, t}), v, '<', 0);
      }
    for (int t = 1; t <= m_; ++t) {
      std::vector<LinTerm> v;
      for (int i = 1; i <= n_; ++i) v.push_back({s_[i][t], 1});
      row("28", join({t}), v, '=', 1);
    }
    if (sc_.kappa_enabled) {
      const int k = sc_.kappa;
      for (int t = 1; t <= m_ - k; ++t) {
        std::vector<LinTerm> v;
        for (int d = t; d <= t + k; ++d) v.push_back({s_[cap_][d], 1});
        row("29", join({t}), v, '>', 1);
      }
    }
    for (int i = 1; i <= n_; ++i)
      for (int t = 1; t <= m_; ++t) {
        auto v = out_arcs(i, t, -1);
        v.push_back({z_[i][t], 1});
        v.push_back({e_[i][t], -1});
        row("30", join({i, t}), v, '<', 0);
      }
    for (int i = 1; i <= n_; ++i)
      for (int t = 1; t <= m_; ++t) {
        auto v = in_arcs(i, t, -1);
        v.push_back({z_[i][t], 1});
        v.push_back({l_[i][t], -1});
        row("31", join({i, t}), v, '<', 0);
      }
    // ordering labels; the big-M is alpha+2 so an unused arc never binds
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        for (int t = 2; t <= m_; ++t) {
          if (i == j) continue;
          row("32", join({i, j, t}),
              {{s_[j][t - 1], A2}, {x_[t][i][j], -A2}, {u_[j][t], 1}, {u_[i][t], -1}}, '>', 1 - A2);
        }
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) row("33", join({i, t}), {{u_[i][t], 1}}, '<', A1);
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) {
        std::vector<LinTerm> v{{u_[i][t], 1}};
        for (int a = 0; a < N; ++a)
          for (int b = 0; b < N; ++b)
            if (a != b) v.push_back({x_[t][a][b], -1});
        row("34", join({i, t}), v, '<', 1);
      }
    for (int i = 0; i < N; ++i)
      for (int t = 2; t <= m_; ++t) row("35", join({i, t}), {{u_[i][t], 1}, {s_[i][t - 1], -1}}, '>', 0);
    for (int i = 0; i < N; ++i)
      for (int t = 2; t <= m_; ++t) row("36", join({i, t}), {{u_[i][t], 1}, {s_[i][t - 1], A1}}, '<', A1 + 1);
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) {
        auto v = out_arcs(i, t, -1);
        v.push_back({u_[i][t], 1});
        row("37", join({i, t}), v, '>', 0);
      }
    // relaxed by last night's stay so a closed tour's start keeps label 1
    for (int i = 0; i < N; ++i)
      for (int t = 2; t <= m_; ++t) {
        auto v = out_arcs(i, t, -1);
        v.push_back({u_[i][t], 1});
        v.push_back({s_[i][t - 1], 1});
        v.push_back({s_[i][t], -1});
        row("38", join({i, t}), v, '>', 0);
      }
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t) {
        auto v = out_arcs(i, t, -A1);
        append(v, in_arcs(i, t, -A1));
        v.push_back({u_[i][t], 1});
        row("39", join({i, t}), v, '<', 0);
      }
    if (with_r_) r_rows();
    extra_rows();
  }

  void r_rows() {
    const int N = n_ + 1;
    for (int i = 0; i < N; ++i)
      for (int t = 2; t <= m_; ++t)
        for (int s = 1; s < t; ++s) row("40", join({i, t, s}), {{r_[i][t][s], 1}, {z_[i][t], -1}}, '<', 0);
    for (int i = 0; i < N; ++i)
      for (int t = 2; t <= m_; ++t)
        for (int s = 1; s < t; ++s) row("41", join({i, t, s}), {{r_[i][t][s], 1}, {z_[i][t - s], -1}}, '<', 0);
    for (int i = 0; i < N; ++i)
      for (int t = 3; t <= m_; ++t)
        for (int s = 2; s < t; ++s) {
          std::vector<LinTerm> v{{r_[i][t][s], static_cast<double>(s)}};
          for (int k = t - s + 1; k <= t - 1; ++k) v.push_back({z_[i][k], 1});
          row("42", join({i, t, s}), v, '<', s);
        }
    for (int i = 0; i < N; ++i)
      for (int t = 1; t <= m_; ++t)
        for (int s = t; s <= m_; ++s) row("43", join({i, t, s}), {{r_[i][t][s], 1}}, '=', 0);
    // a repeat on day u cannot reach back past the first meeting on day t
    for (int i = 1; i <= n_; ++i)
      for (int t = 2; t <= m_; ++t)
        for (int u = t + 1; u <= m_; ++u)
          for (int s = u - t + 1; s < u; ++s)
            row("44", join({i, t, u, s}), {{r_[i][u][s], 1}, {fm_[i][t], 1}}, '<', 1);
    for (int i = 1; i <= n_; ++i)
      for (int t = 3; t <= m_; ++t)
        for (int s = 2; s < t; ++s) {
          std::vector<LinTerm> v{{r_[i][t][s], 1}, {z_[i][t - s], -1}, {z_[i][t], -1}};
          for (int k = t - s + 1; k <= t - 1; ++k) v.push_back({z_[i][k], 1});
          row("45", join({i, t, s}), v, '>', -1);
        }
  }

  void extra_rows() {
    const int N = n_ + 1;
    const double A1 = alpha_ + 1, A2 = alpha_ + 2;
    for (int t = 1; t <= m_; ++t) {
      std::vector<LinTerm> v;
      for (int i = 1; i <= n_; ++i)
        if (inst_.city(i).size_class == SizeClass::big) v.push_back({z_[i][t], 1});
      if (v.size() > 1) row("B1", join({t}), v, '<', 1);
    }
    for (int i = 1; i <= n_; ++i) {
      std::vector<LinTerm> v;
      for (int t = 1; t <= m_; ++t) v.push_back({z_[i][t], 1});
      row("B2", join({i}), v, '<', sc_.meeting_caps.of(inst_.city(i).size_class));
    }
    // day one: the night before is spent at the capital
    for (int i = 0; i < N; ++i) {
      std::vector<LinTerm> v{{s_[i][1], -1}};
      for (auto x : half_ends(1)) v.push_back({x.var, -x.coef});
      row("B3", join({19, i}), v, '<', -delta(i));
    }
    for (int i = 0; i < N; ++i) {
      auto v = half_ends(1);
      v.push_back({s_[i][1], -1});
      row("B3", join({20, i}), v, '>', -delta(i));
    }
    for (int i = 1; i <= n_; ++i) row("B3", join({21, i}), {{l_[i][1], -1}, {s_[i][1], -1}}, '<', -delta(i));
    for (int i = 1; i <= n_; ++i) row("B3", join({24, i}), {{x_[1][i][0], -1}}, '>', -delta(i));
    row("B3", join({27, cap_}), out_arcs(cap_, 1), '>', 1);
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) {
        if (i == j) continue;
        row("B3", join({32, i, j}), {{x_[1][i][j], -A2}, {u_[j][1], 1}, {u_[i][1], -1}}, '>', 1 - A2 - A2 * delta(j));
      }
    for (int i = 0; i < N; ++i) row("B3", join({35, i}), {{u_[i][1], 1}}, '>', delta(i));
    for (int i = 0; i < N; ++i) row("B3", join({36, i}), {{u_[i][1], 1}}, '<', A1 * (1 - delta(i)) + 1);
    for (int i = 0; i < N; ++i) {
      auto v = out_arcs(i, 1, -1);
      v.push_back({u_[i][1], 1});
      v.push_back({s_[i][1], -1});
      row("B3", join({38, i}), v, '>', -delta(i));
    }
    if (sc_.end_at_capital) row("B4", join({m_}), {{s_[cap_][m_], 1}}, '=', 1);
    if (sc_.force_closed_at_capital)
      for (int t = 1; t <= m_; ++t) row("B5", join({t}), {{s_[cap_][t], 1}}, '=', 1);
  }

  const Instance& inst_;
  const ScenarioConfig& sc_;
  MilpModel M;
  int n_ = 0, m_ = 0, alpha_ = 4, cap_ = 1;
  bool with_r_ = true;
  std::vector<std::vector<std::vector<int>>> x_; // [t][i][j]
  std::vector<std::vector<int>> l_, e_, s_, z_, fm_, u_;
  std::vector<std::vector<std::vector<int>>> r_; // [i][t][s]
};

void write_terms(std::ostringstream& os, const MilpModel& model, const std::vector<LinTerm>& terms) {
  int on_line = 0;
  bool first = true;
  for (const auto& t : terms) {
    if (on_line == 8) {
      os << "\n   ";
      on_line = 0;
    }
    const double a = std::abs(t.coef);
    const char* sign = t.coef < 0 ? (first ? "- " : " - ") : (first ? "" : " + ");
    os << sign;
    if (a != 1) os << fmt(a) << ' ';
    os << model.vars[static_cast<std::size_t>(t.var)].name;
    first = false;
    ++on_line;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

} // namespace

MilpModel build_model(const Instance& inst, const ScenarioConfig& sc) {
  if (!inst.has_city(inst.params.capital_id)) throw DomainError("model needs a capital city");
  return Builder(inst, sc).build();
}

std::string lp_text(const MilpModel& model) {
  std::ostringstream os;
  os << "\\ instance " << model.instance_name << ", scenario " << to_string(model.scenario) << ", n=" << model.n
     << ", m=" << model.m << "\n";
  os << "\\ variables " << model.vars.size() << ", rows " << model.rows.size() << "\n";
  os << "\\ suggested solver options: MIPGap=0 NumericFocus=3 DualReductions=0\n";
  os << "Maximize\n obj: ";
  write_terms(os, model, model.objective);
  os << "\nSubject To\n";
  for (const auto& r : model.rows) {
    os << ' ' << r.name << ": ";
    write_terms(os, model, r.terms);
    os << (r.sense == '<' ? " <= " : r.sense == '>' ? " >= " : " = ") << fmt(r.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& v : model.vars)
    if (!v.binary) os << ' ' << v.name << " >= 0\n";
  os << "Binaries\n";
  int on_line = 0;
  for (const auto& v : model.vars) {
    if (!v.binary) continue;
    os << ' ' << v.name;
    if (++on_line == 10) {
      os << '\n';
      on_line = 0;
    }
  }
  if (on_line) os << '\n';
  os << "End\n";
  return os.str();
}

void write_lp(const MilpModel& model, const std::string& path) { write_file(path, lp_text(model)); }

VariableAssignment schedule_to_assignment(const MilpModel& model, const Schedule& s, const Instance& inst,
                                          const ScenarioConfig& sc) {
  const auto viol = check_feasibility(s, inst, sc);
  if (!viol.empty()) throw ValidationError("warm start needs a feasible schedule: " + viol.front().render());
  if (s.m() != model.m || inst.n() != model.n) throw ValidationError("schedule does not match the model size");
  VariableAssignment a;
  a.values.assign(model.vars.size(), 0.0);
  auto set = [&](const std::string& name, double v) { a.values[static_cast<std::size_t>(model.var(name))] = v; };

  for (int t = 1; t <= s.m(); ++t) {
    const DayTour& d = s.day(t);
    const auto& r = d.route;
    if (r.size() == 1) {
      const CityId i = r[0];
      set("X" + join({i, 0, t}), 1);
      set("X" + join({0, i, t}), 1);
      set("U" + join({i, t}), 1);
      set("U" + join({0, t}), 2);
    } else {
      for (std::size_t k = 0; k + 1 < r.size(); ++k) set("X" + join({r[k], r[k + 1], t}), 1);
      const bool closed = r.front() == r.back();
      const std::size_t labelled = closed ? r.size() - 1 : r.size();
      for (std::size_t k = 0; k < labelled; ++k) set("U" + join({r[k], t}), static_cast<double>(k + 1));
      if (!closed) {
        set("L" + join({r.front(), t}), 1);
        set("E" + join({r.back(), t}), 1);
      }
    }
    set("S" + join({d.terminal(), t}), 1);
  }
  const MeetingLedger ledger(s, inst.n(), true);
  const bool with_r = model.scenario != ScenarioId::full_1meet;
  for (CityId c = 1; c <= inst.n(); ++c) {
    const auto& days = ledger.days_of(c);
    for (std::size_t k = 0; k < days.size(); ++k) {
      set("Z" + join({c, days[k]}), 1);
      if (k == 0) set("FM" + join({c, days[k]}), 1);
      else if (with_r) set("R" + join({c, days[k], days[k] - days[k - 1]}), 1);
    }
  }
  return a;
}

AssignmentCheck check_assignment(const MilpModel& model, const VariableAssignment& a, double tol) {
  if (a.values.size() != model.vars.size()) throw DomainError("assignment does not cover the model");
  AssignmentCheck out;
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    const double v = a.values[k];
    const auto& var = model.vars[k];
    double bad = 0;
    if (v < -tol) bad = -v;
    if (var.binary) bad = std::max(bad, std::min(std::abs(v), std::abs(v - 1)));
    if (bad > tol) out.violations.push_back({var.name, "46", bad});
  }
  for (const auto& r : model.rows) {
    double lhs = 0;
    for (const auto& t : r.terms) lhs += t.coef * a.values[static_cast<std::size_t>(t.var)];
    double res = 0;
    if (r.sense == '<') res = lhs - r.rhs;
    else if (r.sense == '>') res = r.rhs - lhs;
    else res = std::abs(lhs - r.rhs);
    if (res > tol) out.violations.push_back({r.name, r.tag, res});
  }
  for (const auto& t : model.objective) out.objective += t.coef * a.values[static_cast<std::size_t>(t.var)];
  return out;
}

std::string mipstart_text(const MilpModel& model, const VariableAssignment& a, bool include_zeros) {
  std::ostringstream os;
  os << "# MIP start for " << model.instance_name << "\n";
  for (std::size_t k = 0; k < model.vars.size(); ++k) {
    const double v = a.values.at(k);
    if (v == 0 && !include_zeros) continue;
    os << model.vars[k].name << ' ' << fmt(v) << '\n';
  }
  return os.str();
}

void write_mipstart(const MilpModel& model, const VariableAssignment& a, const std::string& path,
                    bool include_zeros) {
  write_file(path, mipstart_text(model, a, include_zeros));
}

} // namespace mptpp
