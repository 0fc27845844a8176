#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "upm/detail/digraph_canon.hpp"
#include "upm/detail/dot.hpp"
#include "upm/error.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

struct BehaviorGraphNode {
  std::string event_id;
  LabelSet labels;
  TimeInterval time;
  bool indeterminate = false;
};

// Transitive reduction of the certain-precedence relation of one trace.
// Nodes are stored sorted by (t_min, t_max, event_id), which is a
// topological order.
struct BehaviorGraph {
  std::vector<BehaviorGraphNode> nodes;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> out;
    for (std::size_t u = 0; u < succ.size(); ++u) {
      for (const int v : succ[u]) out.emplace_back(static_cast<int>(u), v);
    }
    return out;
  }

  std::vector<int> sources() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < pred.size(); ++v) {
      if (pred[v].empty()) out.push_back(static_cast<int>(v));
    }
    return out;
  }

  std::vector<int> sinks() const {
    std::vector<int> out;
    for (std::size_t v = 0; v < succ.size(); ++v) {
      if (succ[v].empty()) out.push_back(static_cast<int>(v));
    }
    return out;
  }
};

// Certain precedence is an interval order, so the reduction successors of u
// are exactly the nodes v with e_u < s_v <= min{e_w : s_w > e_u}: a
// contiguous run of the nodes sorted by start time.
inline BehaviorGraph build_behavior_graph(const UncertainTrace& trace) {
  BehaviorGraph g;
  const std::size_t n = trace.events.size();
  g.nodes.reserve(n);
  for (const UncertainEvent& e : trace.events) {
    g.nodes.push_back({e.id, e.labels, e.time, e.indeterminate});
  }
  std::sort(g.nodes.begin(), g.nodes.end(),
            [](const BehaviorGraphNode& a, const BehaviorGraphNode& b) {
              if (a.time.t_min != b.time.t_min) return a.time.t_min < b.time.t_min;
              if (a.time.t_max != b.time.t_max) return a.time.t_max < b.time.t_max;
              return a.event_id < b.event_id;
            });
  g.succ.assign(n, {});
  g.pred.assign(n, {});
  if (n == 0) return g;

  std::vector<Timestamp> starts(n);
  for (std::size_t i = 0; i < n; ++i) starts[i] = g.nodes[i].time.t_min;
  // sufmin_end[i] = min over j >= i of t_max(j)
  std::vector<Timestamp> sufmin_end(n);
  for (std::size_t i = n; i-- > 0;) {
    sufmin_end[i] = g.nodes[i].time.t_max;
    if (i + 1 < n) sufmin_end[i] = std::min(sufmin_end[i], sufmin_end[i + 1]);
  }
  for (std::size_t u = 0; u < n; ++u) {
    const Timestamp eu = g.nodes[u].time.t_max;
    const std::size_t lo = static_cast<std::size_t>(
        std::upper_bound(starts.begin(), starts.end(), eu) - starts.begin());
    if (lo == n) continue;
    const Timestamp m = sufmin_end[lo];
    const std::size_t hi = static_cast<std::size_t>(
        std::upper_bound(starts.begin() + static_cast<std::ptrdiff_t>(lo),
                         starts.end(), m) -
        starts.begin());
    for (std::size_t v = lo; v < hi; ++v) {
      g.succ[u].push_back(static_cast<int>(v));
      g.pred[v].push_back(static_cast<int>(u));
    }
  }
  return g;
}

namespace detail {

inline std::string node_color(const LabelSet& labels, bool indeterminate) {
  std::string c = indeterminate ? "?" : "!";
  for (const std::string& l : labels) {
    c += '\x1f';
    c += l;
  }
  return c;
}

}  // namespace detail

// Two behavior graphs get the same form iff they are isomorphic respecting
// label sets, indeterminacy, and edge direction.
inline std::string canonical_form(const BehaviorGraph& g) {
  detail::ColoredDigraph cg;
  cg.colors.reserve(g.nodes.size());
  for (const BehaviorGraphNode& node : g.nodes) {
    cg.colors.push_back(detail::node_color(node.labels, node.indeterminate));
  }
  cg.adj = g.succ;
  return detail::canonical_string(cg);
}

inline std::string to_dot(const BehaviorGraph& g) {
  std::string out = "digraph behavior_graph {\n  rankdir=LR;\n  node [shape=ellipse];\n";
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    const BehaviorGraphNode& node = g.nodes[v];
    out += "  n" + std::to_string(v) + " [label=\"" +
           detail::dot_escape(detail::label_set_text(node.labels)) +
           "\", xlabel=\"" + detail::dot_escape(node.event_id) + "\"";
    if (node.indeterminate) out += ", style=dashed";
    out += "];\n";
  }
  for (const auto& [u, v] : g.edges()) {
    out += "  n" + std::to_string(u) + " -> n" + std::to_string(v) + ";\n";
  }
  out += "}\n";
  return out;
}

struct VariantGroup {
  std::string form;
  std::vector<std::string> case_ids;
};

// Groups traces whose behavior graphs are isomorphic. Groups are sorted by
// descending size, ties by form; case ids keep log order.
inline std::vector<VariantGroup> group_variants(const UncertainLog& log) {
  std::map<std::string, std::vector<std::string>> by_form;
  for (const UncertainTrace& trace : log.traces) {
    const std::string form = canonical_form(build_behavior_graph(trace));
    by_form[form].push_back(trace.case_id);
  }
  std::vector<VariantGroup> groups;
  groups.reserve(by_form.size());
  for (auto& [form, ids] : by_form) groups.push_back({form, std::move(ids)});
  std::sort(groups.begin(), groups.end(),
            [](const VariantGroup& a, const VariantGroup& b) {
              if (a.case_ids.size() != b.case_ids.size()) {
                return a.case_ids.size() > b.case_ids.size();
              }
              return a.form < b.form;
            });
  return groups;
}

}  // namespace upm
