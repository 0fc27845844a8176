#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "upm/detail/iso8601.hpp"
#include "upm/petri_net.hpp"
#include "upm/uncertain_log.hpp"

namespace fixtures {

inline constexpr std::int64_t kDay = 86'400'000;

inline upm::Timestamp july(int day) {
  return *upm::detail::parse_iso8601("2021-07-01T00:00:00Z") +
         (day - 1) * kDay;
}

// Patient ID192: night sweats of uncertain occurrence, a thrombocytosis of
// ambiguous type, a splenomegaly dated only to a week, an admission.
inline upm::UncertainTrace running_example_trace() {
  upm::UncertainTrace t;
  t.case_id = "ID192";
  t.events.push_back(
      {"e1", {"NightSweats"}, upm::TimeInterval(july(5)), true, {}});
  t.events.push_back(
      {"e2", {"PrTP", "SecTP"}, upm::TimeInterval(july(8)), false, {}});
  t.events.push_back(
      {"e3", {"Splenomeg"}, upm::TimeInterval(july(4), july(10)), false, {}});
  t.events.push_back({"e4", {"Adm"}, upm::TimeInterval(july(12)), false, {}});
  return t;
}

inline upm::PetriNet linear_model(const std::vector<std::string>& labels) {
  upm::PetriNet net;
  int prev = net.add_place("s0");
  net.initial_marking.add(prev, 1);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int t = net.add_transition("m" + std::to_string(i), labels[i]);
    const int next = net.add_place("s" + std::to_string(i + 1));
    net.add_arc_pt(prev, t);
    net.add_arc_tp(t, next);
    prev = next;
  }
  net.final_marking.add(prev, 1);
  return net;
}

inline upm::PetriNet running_example_model() {
  return linear_model({"NightSweats", "PrTP", "Splenomeg", "Adm"});
}

#ifdef UPM_DATA_DIR
inline std::string data_path(const std::string& name) {
  return std::string(UPM_DATA_DIR) + "/" + name;
}
#endif

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace fixtures
