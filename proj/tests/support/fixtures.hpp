#pragma once

#include <string>
#include <vector>

#include "mptpp/instance.hpp"
#include "mptpp/schedule.hpp"

namespace fixtures {

inline std::string data_path(const std::string& file) { return std::string(MPTPP_DATA_DIR) + "/" + file; }

inline mptpp::Instance turkey() { return mptpp::load_instance(data_path("pe1_40c_10d.json")); }

mptpp::Schedule turkey_tours();

// Small hand-made instance: cities on a line at the given x positions
// (minutes = cost = |dx|). All cities small unless listed in `big`.
mptpp::Instance line_instance(const std::vector<double>& xs, int days, double tmax,
                              const std::vector<double>& rewards,
                              const std::vector<int>& big = {});

mptpp::DayTour day(std::vector<mptpp::CityId> route, std::vector<mptpp::CityId> meetings);

} // namespace fixtures
