#pragma once

#include <string>
#include <unordered_map>
#include <vector>

#include "mptpp/instance.hpp"
#include "mptpp/scenario.hpp"
#include "mptpp/schedule.hpp"

namespace mptpp {

// Variable families over N = {0..n} (0 is the fictitious city) and days 1..m:
//   X_i_j_t  binary, i != j                    (n+1) n m
//   L, E, S, Z, FM  binary, per (i, t)          (n+1) m each
//   U_i_t    continuous >= 0                    (n+1) m
//   R_i_t_s  binary, s = 1..m                   (n+1) m m registered,
//            of which (n+1) m (m-1) / 2 are free; rows tagged 43 pin s >= t to 0.
// Full-1Meet registers no R. Rows carry the tags 8..45 plus
//   B1 one big-city meeting per day, B2 per-city meeting caps,
//   B3 day-one rows with the capital as the previous night,
//   B4 end at the capital, B5 capital every night.
enum class VarFamily { X, L, E, S, Z, FM, R, U };

struct MilpVar {
  std::string name;
  VarFamily family;
  bool binary = true;
};

struct LinTerm {
  int var = 0;
  double coef = 0;
};

struct MilpRow {
  std::string tag;  // "08".."45", "B1".."B5"
  std::string name; // unique, e.g. c08_3_2
  std::vector<LinTerm> terms;
  char sense = '<'; // '<', '>', '='
  double rhs = 0;
};

struct MilpModel {
  int n = 0;
  int m = 0;
  ScenarioId scenario = ScenarioId::base;
  std::string instance_name;
  std::vector<MilpVar> vars;
  std::unordered_map<std::string, int> index;
  std::vector<LinTerm> objective; // maximised
  std::vector<MilpRow> rows;

  int var(const std::string& name) const;
  bool has_var(const std::string& name) const { return index.count(name) != 0; }
  long count(VarFamily f) const;
  long rows_with_tag(const std::string& tag) const;
};

struct ModelCounts {
  long x = 0, per_node_day = 0, r_registered = 0, r_free = 0;
};

// Closed forms for the registry sizes.
ModelCounts expected_counts(int n, int m, ScenarioId scenario);

MilpModel build_model(const Instance& inst, const ScenarioConfig& sc);

std::string lp_text(const MilpModel& model);
void write_lp(const MilpModel& model, const std::string& path);

struct VariableAssignment {
  std::vector<double> values; // aligned with MilpModel::vars
};

// Rejects infeasible schedules with ValidationError.
VariableAssignment schedule_to_assignment(const MilpModel& model, const Schedule& s,
                                          const Instance& inst, const ScenarioConfig& sc);

struct RowResidual {
  std::string row; // row or variable name
  std::string tag;
  double residual = 0; // amount by which the row or bound is violated
};

struct AssignmentCheck {
  std::vector<RowResidual> violations;
  double objective = 0;
};

AssignmentCheck check_assignment(const MilpModel& model, const VariableAssignment& a, double tol = 1e-6);

std::string mipstart_text(const MilpModel& model, const VariableAssignment& a, bool include_zeros = false);
void write_mipstart(const MilpModel& model, const VariableAssignment& a, const std::string& path,
                    bool include_zeros = false);

} // namespace mptpp
