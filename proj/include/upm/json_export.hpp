#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "upm/behavior_graph.hpp"
#include "upm/conformance.hpp"
#include "upm/detail/iso8601.hpp"
#include "upm/discovery.hpp"
#include "upm/realizations.hpp"
#include "upm/statistics.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

using Json = nlohmann::json;

inline Json to_json(const CountBounds& b) {
  return Json{{"min", b.min_count}, {"max", b.max_count}};
}

inline Json bounds_map_json(const std::map<std::string, CountBounds>& m) {
  Json out = Json::object();
  for (const auto& [key, b] : m) out[key] = to_json(b);
  return out;
}

inline Json stats_json(const LogStatistics& s) {
  return Json{{"traces", s.n_traces},
              {"events", s.n_events},
              {"mean_trace_length", s.mean_trace_length},
              {"uncertain_events", s.n_uncertain_events},
              {"uncertain_traces", s.n_uncertain_traces},
              {"variants", s.n_variants},
              {"activities", bounds_map_json(s.activity_counts)},
              {"start_activities", bounds_map_json(s.start_activities)},
              {"end_activities", bounds_map_json(s.end_activities)}};
}

inline Json gantt_json(const UncertainTrace& trace) {
  Json rows = Json::array();
  for (const GanttRow& r : gantt_rows(trace)) {
    rows.push_back(Json{{"event", r.event_id},
                        {"labels", r.labels},
                        {"t_min", r.t_min},
                        {"t_max", r.t_max},
                        {"from", detail::format_utc_ms(r.t_min)},
                        {"to", detail::format_utc_ms(r.t_max)},
                        {"indeterminate", r.indeterminate}});
  }
  return Json{{"case", trace.case_id}, {"rows", rows}};
}

inline Json graph_json(const BehaviorGraph& g) {
  Json nodes = Json::array();
  for (const BehaviorGraphNode& node : g.nodes) {
    nodes.push_back(Json{{"id", node.event_id},
                         {"labels", node.labels},
                         {"t_min", node.time.t_min},
                         {"t_max", node.time.t_max},
                         {"indeterminate", node.indeterminate}});
  }
  Json edges = Json::array();
  for (const auto& [u, v] : g.edges()) {
    edges.push_back(Json::array(
        {g.nodes[static_cast<std::size_t>(u)].event_id,
         g.nodes[static_cast<std::size_t>(v)].event_id}));
  }
  return Json{{"nodes", nodes}, {"edges", edges}};
}

inline Json variants_json(const std::vector<VariantGroup>& groups) {
  Json out = Json::array();
  for (const VariantGroup& g : groups) {
    out.push_back(Json{{"count", g.case_ids.size()}, {"cases", g.case_ids}});
  }
  return out;
}

inline Json realizations_json(const std::vector<Sequence>& seqs) {
  return Json{{"count", seqs.size()}, {"realizations", seqs}};
}

inline const char* move_kind_name(MoveKind kind) {
  switch (kind) {
    case MoveKind::sync:
      return "sync";
    case MoveKind::log:
      return "log";
    case MoveKind::model:
      return "model";
  }
  return "";
}

inline Json alignment_json(const Alignment& a) {
  Json steps = Json::array();
  for (const AlignmentStep& step : a.steps) {
    Json s{{"type", move_kind_name(step.kind)}, {"silent", step.silent}};
    if (!step.label.empty()) s["label"] = step.label;
    if (!step.model_transition.empty()) {
      s["model_transition"] = step.model_transition;
    }
    steps.push_back(std::move(s));
  }
  return Json{{"cost", a.cost}, {"steps", steps}};
}

inline Json bounds_json(const ConformanceBounds& b) {
  return Json{{"lower", b.lower},
              {"upper", b.upper},
              {"best_realization", b.best_realization},
              {"worst_realization", b.worst_realization},
              {"best_alignment", alignment_json(b.best)},
              {"worst_alignment", alignment_json(b.worst)}};
}

inline Json bounds_json(const OptimizedBounds& b) {
  return Json{{"lower", b.lower},
              {"best_realization", b.best_realization},
              {"best_alignment", alignment_json(b.best)}};
}

inline Json bounds_report_json(const std::vector<TraceBoundsReport>& reports) {
  Json out = Json::array();
  for (const TraceBoundsReport& r : reports) {
    Json entry{{"case", r.case_id}, {"status", r.status}};
    if (r.lower) entry["lower"] = *r.lower;
    if (r.upper) entry["upper"] = *r.upper;
    out.push_back(std::move(entry));
  }
  return out;
}

inline Json udfg_json(const UdfgResult& result) {
  Json edges = Json::array();
  for (const auto& [key, b] : result.udfg.edges) {
    edges.push_back(Json{{"from", key.first},
                         {"to", key.second},
                         {"min", b.min_count},
                         {"max", b.max_count}});
  }
  return Json{{"activities", bounds_map_json(result.udfg.activities)},
              {"edges", edges},
              {"start_activities", bounds_map_json(result.udfg.start_activities)},
              {"end_activities", bounds_map_json(result.udfg.end_activities)},
              {"skipped_cases", result.skipped}};
}

inline Json udfg_json(const Udfg& udfg) {
  Json edges = Json::array();
  for (const auto& [key, b] : udfg.edges) {
    edges.push_back(Json{{"from", key.first},
                         {"to", key.second},
                         {"min", b.min_count},
                         {"max", b.max_count}});
  }
  return Json{{"activities", bounds_map_json(udfg.activities)},
              {"edges", edges},
              {"start_activities", bounds_map_json(udfg.start_activities)},
              {"end_activities", bounds_map_json(udfg.end_activities)}};
}

}  // namespace upm
