#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "upm/error.hpp"

namespace upm {

/// Milliseconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

/// Closed timestamp interval; a certain timestamp has t_min == t_max.
struct TimeInterval {
  Timestamp t_min = 0;
  Timestamp t_max = 0;

  TimeInterval() = default;
  explicit TimeInterval(Timestamp t) : t_min(t), t_max(t) {}
  TimeInterval(Timestamp min, Timestamp max) : t_min(min), t_max(max) {
    if (t_min > t_max) {
      throw Error(ErrorCode::invalid_interval,
                  "interval minimum exceeds maximum");
    }
  }

  bool is_certain() const { return t_min == t_max; }

  friend bool operator==(const TimeInterval&, const TimeInterval&) = default;
};

using LabelSet = std::set<std::string>;

/// A date-typed attribute value, kept distinct from plain integers so
/// serialization round-trips preserve the original type.
struct DateValue {
  Timestamp ms = 0;
  friend bool operator==(const DateValue&, const DateValue&) = default;
};

using AttributeValue =
    std::variant<std::string, std::int64_t, double, bool, DateValue>;
using AttributeMap = std::map<std::string, AttributeValue>;

struct UncertainEvent {
  std::string id;     // unique within the owning trace
  LabelSet labels;    // non-empty; singleton when the activity is certain
  TimeInterval time;
  bool indeterminate = false;  // true: recorded but possibly never happened
  AttributeMap extra_attributes;

  friend bool operator==(const UncertainEvent&, const UncertainEvent&) =
      default;
};

struct UncertainTrace {
  std::string case_id;
  std::vector<UncertainEvent> events;  // storage order from the source file
  AttributeMap attributes;

  friend bool operator==(const UncertainTrace&, const UncertainTrace&) =
      default;
};

struct UncertainLog {
  std::vector<UncertainTrace> traces;
  AttributeMap attributes;

  friend bool operator==(const UncertainLog&, const UncertainLog&) = default;
};

/// [min, max] occurrence counts over the realizations of a trace or log.
struct CountBounds {
  std::int64_t min_count = 0;
  std::int64_t max_count = 0;

  friend bool operator==(const CountBounds&, const CountBounds&) = default;
};

// ---------------------------------------------------------------------------
// per-event / per-trace queries

inline bool is_uncertain(const UncertainEvent& e) {
  return e.labels.size() > 1 || !e.time.is_certain() || e.indeterminate;
}

inline bool is_uncertain(const UncertainTrace& t) {
  return std::any_of(t.events.begin(), t.events.end(),
                     [](const UncertainEvent& e) { return is_uncertain(e); });
}

/// Certain precedence: a is over before b can start.
inline bool certainly_precedes(const UncertainEvent& a,
                               const UncertainEvent& b) {
  return a.time.t_max < b.time.t_min;
}

inline CountBounds activity_count_bounds(const UncertainTrace& t,
                                         const std::string& label) {
  CountBounds b;
  for (const UncertainEvent& e : t.events) {
    if (!e.labels.count(label)) continue;
    ++b.max_count;
    if (e.labels.size() == 1 && !e.indeterminate) ++b.min_count;
  }
  return b;
}

/// All labels occurring (possibly) in the trace.
inline std::set<std::string> trace_labels(const UncertainTrace& t) {
  std::set<std::string> out;
  for (const UncertainEvent& e : t.events) out.insert(e.labels.begin(), e.labels.end());
  return out;
}

inline std::set<std::string> log_labels(const UncertainLog& log) {
  std::set<std::string> out;
  for (const UncertainTrace& t : log.traces) {
    auto labels = trace_labels(t);
    out.insert(labels.begin(), labels.end());
  }
  return out;
}

namespace detail {

// Events that can open a realization: everything certainly before them is
// droppable, i.e. indeterminate.
inline std::vector<std::size_t> possible_first_events(
    const UncertainTrace& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    bool blocked = false;
    for (std::size_t j = 0; j < t.events.size() && !blocked; ++j) {
      if (j == i) continue;
      blocked = certainly_precedes(t.events[j], t.events[i]) &&
                !t.events[j].indeterminate;
    }
    if (!blocked) out.push_back(i);
  }
  return out;
}

inline std::vector<std::size_t> possible_last_events(const UncertainTrace& t) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < t.events.size(); ++i) {
    bool blocked = false;
    for (std::size_t j = 0; j < t.events.size() && !blocked; ++j) {
      if (j == i) continue;
      blocked = certainly_precedes(t.events[i], t.events[j]) &&
                !t.events[j].indeterminate;
    }
    if (!blocked) out.push_back(i);
  }
  return out;
}

inline CountBounds boundary_bounds(const UncertainTrace& t,
                                   const std::vector<std::size_t>& boundary,
                                   const std::string& label) {
  CountBounds b;
  // max: some realization has `label` at the boundary position.
  for (std::size_t i : boundary) {
    if (t.events[i].labels.count(label)) {
      b.max_count = 1;
      break;
    }
  }
  // min: every realization is non-empty and every possible boundary event is
  // forced to `label`.
  bool has_determinate = std::any_of(
      t.events.begin(), t.events.end(),
      [](const UncertainEvent& e) { return !e.indeterminate; });
  bool all_forced = std::all_of(
      boundary.begin(), boundary.end(), [&](std::size_t i) {
        return t.events[i].labels.size() == 1 &&
               *t.events[i].labels.begin() == label;
      });
  if (has_determinate && all_forced) b.min_count = 1;
  return b;
}

}  // namespace detail

/// Can/must the trace start with `label`, over all realizations.
inline CountBounds start_activity_bounds(const UncertainTrace& t,
                                         const std::string& label) {
  if (t.events.empty()) {
    throw Error(ErrorCode::empty_trace, "trace has no events");
  }
  return detail::boundary_bounds(t, detail::possible_first_events(t), label);
}

inline CountBounds end_activity_bounds(const UncertainTrace& t,
                                       const std::string& label) {
  if (t.events.empty()) {
    throw Error(ErrorCode::empty_trace, "trace has no events");
  }
  return detail::boundary_bounds(t, detail::possible_last_events(t), label);
}

/// Bounds for every label that can appear first (entries with max == 0 are
/// omitted).
inline std::map<std::string, CountBounds> start_activity_bounds_map(
    const UncertainTrace& t) {
  std::map<std::string, CountBounds> out;
  if (t.events.empty()) return out;
  auto firsts = detail::possible_first_events(t);
  std::set<std::string> candidates;
  for (std::size_t i : firsts) {
    candidates.insert(t.events[i].labels.begin(), t.events[i].labels.end());
  }
  for (const std::string& label : candidates) {
    out.emplace(label, detail::boundary_bounds(t, firsts, label));
  }
  return out;
}

inline std::map<std::string, CountBounds> end_activity_bounds_map(
    const UncertainTrace& t) {
  std::map<std::string, CountBounds> out;
  if (t.events.empty()) return out;
  auto lasts = detail::possible_last_events(t);
  std::set<std::string> candidates;
  for (std::size_t i : lasts) {
    candidates.insert(t.events[i].labels.begin(), t.events[i].labels.end());
  }
  for (const std::string& label : candidates) {
    out.emplace(label, detail::boundary_bounds(t, lasts, label));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Gantt projection

struct GanttRow {
  std::string event_id;
  LabelSet labels;
  Timestamp t_min = 0;
  Timestamp t_max = 0;
  bool indeterminate = false;

  friend bool operator==(const GanttRow&, const GanttRow&) = default;
};

/// One row per event, sorted by (t_min, t_max, event_id).
inline std::vector<GanttRow> gantt_rows(const UncertainTrace& t) {
  std::vector<GanttRow> rows;
  rows.reserve(t.events.size());
  for (const UncertainEvent& e : t.events) {
    rows.push_back({e.id, e.labels, e.time.t_min, e.time.t_max,
                    e.indeterminate});
  }
  std::sort(rows.begin(), rows.end(),
            [](const GanttRow& a, const GanttRow& b) {
              return std::tie(a.t_min, a.t_max, a.event_id) <
                     std::tie(b.t_min, b.t_max, b.event_id);
            });
  return rows;
}

}  // namespace upm
