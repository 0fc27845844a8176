#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>

#include "upm/behavior_graph.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

struct LogStatistics {
  std::size_t n_traces = 0;
  std::size_t n_events = 0;
  double mean_trace_length = 0.0;
  std::size_t n_uncertain_events = 0;
  std::size_t n_uncertain_traces = 0;
  std::size_t n_variants = 0;
  std::map<std::string, CountBounds> activity_counts;
  std::map<std::string, CountBounds> start_activities;
  std::map<std::string, CountBounds> end_activities;
};

inline LogStatistics log_statistics(const UncertainLog& log) {
  LogStatistics s;
  s.n_traces = log.traces.size();
  for (const UncertainTrace& trace : log.traces) {
    s.n_events += trace.events.size();
    if (is_uncertain(trace)) ++s.n_uncertain_traces;
    for (const UncertainEvent& e : trace.events) {
      if (is_uncertain(e)) ++s.n_uncertain_events;
    }
    for (const std::string& label : trace_labels(trace)) {
      const CountBounds b = activity_count_bounds(trace, label);
      CountBounds& acc = s.activity_counts[label];
      acc.min_count += b.min_count;
      acc.max_count += b.max_count;
    }
    if (!trace.events.empty()) {
      for (const auto& [label, b] : start_activity_bounds_map(trace)) {
        CountBounds& acc = s.start_activities[label];
        acc.min_count += b.min_count;
        acc.max_count += b.max_count;
      }
      for (const auto& [label, b] : end_activity_bounds_map(trace)) {
        CountBounds& acc = s.end_activities[label];
        acc.min_count += b.min_count;
        acc.max_count += b.max_count;
      }
    }
  }
  if (s.n_traces > 0) {
    s.mean_trace_length =
        static_cast<double>(s.n_events) / static_cast<double>(s.n_traces);
  }
  s.n_variants = group_variants(log).size();
  return s;
}

}  // namespace upm
