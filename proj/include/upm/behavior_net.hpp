#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "upm/behavior_graph.hpp"
#include "upm/error.hpp"
#include "upm/petri_net.hpp"
#include "upm/realizations.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

// Petri net whose complete firing sequences produce exactly the realizations
// of one trace. Every event contributes one labeled transition per possible
// label, plus one silent transition when the event is indeterminate; all of
// them share the places of the event's incident behavior graph edges.
struct BehaviorNet {
  PetriNet net;
  // origin of each transition: event id and chosen label (nullopt = skip)
  std::vector<std::pair<std::string, std::optional<std::string>>> origins;
};

inline BehaviorNet build_behavior_net(const BehaviorGraph& g) {
  BehaviorNet bn;
  const std::size_t n = g.nodes.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (g.nodes[v].labels.empty()) {
      throw Error(ErrorCode::empty_label_set,
                  "event " + g.nodes[v].event_id +
                      " has no possible activity label");
    }
  }
  std::map<std::pair<int, int>, int> edge_place;
  for (const auto& [u, v] : g.edges()) {
    edge_place[{u, v}] = bn.net.add_place(
        "e:" + g.nodes[static_cast<std::size_t>(u)].event_id + ">" +
        g.nodes[static_cast<std::size_t>(v)].event_id);
  }
  std::vector<int> src_place(n, -1), sink_place(n, -1);
  for (const int v : g.sources()) {
    const std::size_t vi = static_cast<std::size_t>(v);
    src_place[vi] = bn.net.add_place("src:" + g.nodes[vi].event_id);
    bn.net.initial_marking.add(src_place[vi], 1);
  }
  for (const int v : g.sinks()) {
    const std::size_t vi = static_cast<std::size_t>(v);
    sink_place[vi] = bn.net.add_place("sink:" + g.nodes[vi].event_id);
    bn.net.final_marking.add(sink_place[vi], 1);
  }
  for (std::size_t v = 0; v < n; ++v) {
    const BehaviorGraphNode& node = g.nodes[v];
    std::vector<int> pre, post;
    if (src_place[v] >= 0) pre.push_back(src_place[v]);
    for (const int u : g.pred[v]) pre.push_back(edge_place[{u, static_cast<int>(v)}]);
    if (sink_place[v] >= 0) post.push_back(sink_place[v]);
    for (const int w : g.succ[v]) post.push_back(edge_place[{static_cast<int>(v), w}]);

    const auto attach = [&](const std::string& id,
                            std::optional<std::string> label) {
      const int t = bn.net.add_transition(id, std::move(label));
      for (const int p : pre) bn.net.add_arc_pt(p, t);
      for (const int p : post) bn.net.add_arc_tp(t, p);
    };
    for (const std::string& label : node.labels) {
      attach("t:" + node.event_id + ":" + label, label);
      bn.origins.emplace_back(node.event_id, label);
    }
    if (node.indeterminate) {
      attach("skip:" + node.event_id, std::nullopt);
      bn.origins.emplace_back(node.event_id, std::nullopt);
    }
  }
  return bn;
}

inline BehaviorNet build_behavior_net(const UncertainTrace& trace) {
  return build_behavior_net(build_behavior_graph(trace));
}

namespace detail {
inline constexpr std::size_t kAcceptStateLimit = 1'000'000;
}

// Token-game word acceptance: silent transitions may fire anywhere, labeled
// ones must match the next symbol, and the final marking must be reached
// with the whole word consumed.
inline bool accepts(const PetriNet& net, const Sequence& word) {
  std::set<std::pair<Marking, std::size_t>> seen;
  std::function<bool(const Marking&, std::size_t)> go =
      [&](const Marking& m, std::size_t pos) -> bool {
    if (!seen.insert({m, pos}).second) return false;
    if (seen.size() > detail::kAcceptStateLimit) {
      throw Error(ErrorCode::state_space_exceeded,
                  "acceptance check exceeded " +
                      std::to_string(detail::kAcceptStateLimit) + " states");
    }
    if (pos == word.size() && m == net.final_marking) return true;
    for (const Transition& t : net.transitions) {
      if (!is_enabled(m, t)) continue;
      if (t.silent()) {
        if (go(fire(m, t), pos)) return true;
      } else if (pos < word.size() && *t.label == word[pos]) {
        if (go(fire(m, t), pos + 1)) return true;
      }
    }
    return false;
  };
  return go(net.initial_marking, 0);
}

// Complete language of an acyclic net, shortlex sorted. Throws cap_exceeded
// past `cap` sequences and state_space_exceeded on cyclic behavior.
inline std::vector<Sequence> language(const PetriNet& net,
                                      std::size_t cap = kDefaultRealizationCap) {
  std::map<Marking, std::shared_ptr<SequenceSet>> memo;
  std::set<Marking> on_path;
  std::function<std::shared_ptr<SequenceSet>(const Marking&)> go =
      [&](const Marking& m) -> std::shared_ptr<SequenceSet> {
    const auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    if (!on_path.insert(m).second) {
      throw Error(ErrorCode::state_space_exceeded,
                  "net behavior is cyclic; language is not enumerable");
    }
    if (memo.size() > detail::kAcceptStateLimit) {
      throw Error(ErrorCode::state_space_exceeded,
                  "language enumeration exceeded " +
                      std::to_string(detail::kAcceptStateLimit) + " markings");
    }
    auto result = std::make_shared<SequenceSet>();
    if (m == net.final_marking) result->insert(Sequence{});
    for (const Transition& t : net.transitions) {
      if (!is_enabled(m, t)) continue;
      const auto sub = go(fire(m, t));
      if (t.silent()) {
        result->insert(sub->begin(), sub->end());
      } else {
        for (const Sequence& s : *sub) {
          Sequence x;
          x.reserve(s.size() + 1);
          x.push_back(*t.label);
          x.insert(x.end(), s.begin(), s.end());
          result->insert(std::move(x));
        }
      }
      if (result->size() > cap) {
        throw Error(ErrorCode::cap_exceeded,
                    "language has more than " + std::to_string(cap) +
                        " sequences");
      }
    }
    on_path.erase(m);
    memo.emplace(m, result);
    return result;
  };
  const auto full = go(net.initial_marking);
  return {full->begin(), full->end()};
}

inline std::string to_dot(const BehaviorNet& bn) {
  const PetriNet& net = bn.net;
  std::string out = "digraph behavior_net {\n  rankdir=LR;\n";
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    std::string tokens;
    for (int i = 0; i < net.initial_marking.tokens(static_cast<int>(p)); ++i) {
      tokens += "•";
    }
    out += "  p" + std::to_string(p) + " [shape=circle, label=\"" + tokens +
           "\"";
    if (net.final_marking.tokens(static_cast<int>(p)) > 0) {
      out += ", peripheries=2";
    }
    out += "];\n";
  }
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    const Transition& tr = net.transitions[t];
    out += "  t" + std::to_string(t) + " [shape=box, label=\"" +
           (tr.silent() ? std::string() : detail::dot_escape(*tr.label)) +
           "\", xlabel=\"" + detail::dot_escape(bn.origins[t].first) + "\"";
    if (tr.silent()) out += ", style=filled, fillcolor=black";
    out += "];\n";
  }
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    for (const int p : net.transitions[t].pre) {
      out += "  p" + std::to_string(p) + " -> t" + std::to_string(t) + ";\n";
    }
    for (const int p : net.transitions[t].post) {
      out += "  t" + std::to_string(t) + " -> p" + std::to_string(p) + ";\n";
    }
  }
  out += "}\n";
  return out;
}

}  // namespace upm
