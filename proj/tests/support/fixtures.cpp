#include "fixtures.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace fixtures {

mptpp::Schedule turkey_tours() {
  std::ifstream in(data_path("pe1_40c_10d_tours.json"));
  std::stringstream ss;
  ss << in.rdbuf();
  return mptpp::decode(ss.str());
}

mptpp::Instance line_instance(const std::vector<double>& xs, int days, double tmax,
                              const std::vector<double>& rewards, const std::vector<int>& big) {
  mptpp::Instance inst;
  inst.name = "line";
  inst.params.days = days;
  inst.params.capital_id = 1;
  inst.params.max_tour_minutes = tmax;
  const int n = static_cast<int>(xs.size());
  for (int k = 1; k <= n; ++k) {
    mptpp::City c;
    c.id = k;
    c.name = "L" + std::to_string(k);
    c.population = 100000;
    c.size_class = mptpp::SizeClass::small;
    c.meeting_minutes = 60;
    for (int b : big)
      if (b == k) { c.size_class = mptpp::SizeClass::big; c.meeting_minutes = 120; }
    c.base_reward = rewards.at(static_cast<std::size_t>(k - 1));
    c.reward_overridden = true;
    inst.cities.push_back(c);
  }
  const std::size_t dim = static_cast<std::size_t>(n) + 1;
  inst.travel.cost.assign(dim, std::vector<double>(dim, 0.0));
  inst.travel.minutes.assign(dim, std::vector<double>(dim, 0.0));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      const double d = std::abs(xs[i - 1] - xs[j - 1]);
      inst.travel.cost[i][j] = d;
      inst.travel.minutes[i][j] = d;
    }
  return inst;
}

mptpp::DayTour day(std::vector<mptpp::CityId> route, std::vector<mptpp::CityId> meetings) {
  mptpp::DayTour d{std::move(route), std::move(meetings)};
  mptpp::normalize(d);
  return d;
}

} // namespace fixtures
