#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "upm/detail/dot.hpp"
#include "upm/error.hpp"

namespace upm {

// Sparse marking: (place index, tokens) sorted by place, tokens > 0.
struct Marking {
  std::vector<std::pair<int, int>> entries;

  int tokens(int place) const {
    const auto it = std::lower_bound(
        entries.begin(), entries.end(), place,
        [](const std::pair<int, int>& e, int p) { return e.first < p; });
    return (it != entries.end() && it->first == place) ? it->second : 0;
  }

  void add(int place, int delta) {
    const auto it = std::lower_bound(
        entries.begin(), entries.end(), place,
        [](const std::pair<int, int>& e, int p) { return e.first < p; });
    if (it != entries.end() && it->first == place) {
      it->second += delta;
      if (it->second == 0) entries.erase(it);
    } else if (delta != 0) {
      entries.insert(it, {place, delta});
    }
  }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend bool operator<(const Marking& a, const Marking& b) {
    return a.entries < b.entries;
  }
};

struct MarkingHash {
  std::size_t operator()(const Marking& m) const {
    std::uint64_t h = 14695981039346656037ull;
    for (const auto& [p, c] : m.entries) {
      h ^= static_cast<std::uint64_t>(p) * 0x9e3779b97f4a7c15ull +
           static_cast<std::uint64_t>(c);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline Marking marking_from(const std::vector<int>& places) {
  Marking m;
  for (const int p : places) m.add(p, 1);
  return m;
}

struct Transition {
  std::string id;
  std::optional<std::string> label;  // nullopt = silent
  std::vector<int> pre;              // sorted place indices, multiset
  std::vector<int> post;

  bool silent() const { return !label.has_value(); }
};

struct PetriNet {
  std::vector<std::string> places;  // ids
  std::vector<Transition> transitions;
  Marking initial_marking;
  Marking final_marking;

  int add_place(const std::string& id) {
    places.push_back(id);
    return static_cast<int>(places.size()) - 1;
  }

  int add_transition(const std::string& id, std::optional<std::string> label) {
    transitions.push_back({id, std::move(label), {}, {}});
    return static_cast<int>(transitions.size()) - 1;
  }

  void add_arc_pt(int place, int transition) {
    auto& pre = transitions[static_cast<std::size_t>(transition)].pre;
    pre.insert(std::upper_bound(pre.begin(), pre.end(), place), place);
  }

  void add_arc_tp(int transition, int place) {
    auto& post = transitions[static_cast<std::size_t>(transition)].post;
    post.insert(std::upper_bound(post.begin(), post.end(), place), place);
  }
};

inline bool is_enabled(const Marking& m, const Transition& t) {
  std::size_t i = 0;
  while (i < t.pre.size()) {
    const int place = t.pre[i];
    std::size_t j = i;
    while (j < t.pre.size() && t.pre[j] == place) ++j;
    if (m.tokens(place) < static_cast<int>(j - i)) return false;
    i = j;
  }
  return true;
}

inline std::vector<int> enabled_transitions(const PetriNet& net, const Marking& m) {
  std::vector<int> out;
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    if (is_enabled(m, net.transitions[t])) out.push_back(static_cast<int>(t));
  }
  return out;
}

inline Marking fire(const Marking& m, const Transition& t) {
  if (!is_enabled(m, t)) {
    throw Error(ErrorCode::not_enabled, "transition " + t.id + " is not enabled");
  }
  Marking next = m;
  for (const int p : t.pre) next.add(p, -1);
  for (const int p : t.post) next.add(p, 1);
  return next;
}

enum class MoveKind { sync, log, model };

struct Move {
  MoveKind kind = MoveKind::sync;
  int log_transition = -1;
  int model_transition = -1;
};

// Synchronous product of two nets. Places of the log net come first; moves
// runs parallel to net.transitions. Sync moves pair labeled transitions with
// equal labels.
struct SyncProduct {
  PetriNet net;
  std::vector<Move> moves;
  int log_place_count = 0;
};

inline SyncProduct sync_product(const PetriNet& log_net, const PetriNet& model) {
  SyncProduct prod;
  prod.log_place_count = static_cast<int>(log_net.places.size());
  for (const std::string& p : log_net.places) prod.net.add_place("l:" + p);
  for (const std::string& p : model.places) prod.net.add_place("m:" + p);
  const int offset = prod.log_place_count;

  const auto add_moves = [&](const Transition& t, const char* prefix, int shift,
                             Move move) {
    const int idx = prod.net.add_transition(prefix + t.id, t.label);
    for (const int p : t.pre) prod.net.add_arc_pt(p + shift, idx);
    for (const int p : t.post) prod.net.add_arc_tp(idx, p + shift);
    prod.moves.push_back(move);
  };
  for (std::size_t lt = 0; lt < log_net.transitions.size(); ++lt) {
    add_moves(log_net.transitions[lt], "l:", 0,
              {MoveKind::log, static_cast<int>(lt), -1});
  }
  for (std::size_t mt = 0; mt < model.transitions.size(); ++mt) {
    add_moves(model.transitions[mt], "m:", offset,
              {MoveKind::model, -1, static_cast<int>(mt)});
  }
  for (std::size_t lt = 0; lt < log_net.transitions.size(); ++lt) {
    const Transition& a = log_net.transitions[lt];
    if (a.silent()) continue;
    for (std::size_t mt = 0; mt < model.transitions.size(); ++mt) {
      const Transition& b = model.transitions[mt];
      if (b.silent() || *a.label != *b.label) continue;
      const int idx =
          prod.net.add_transition("s:" + a.id + "|" + b.id, a.label);
      for (const int p : a.pre) prod.net.add_arc_pt(p, idx);
      for (const int p : a.post) prod.net.add_arc_tp(idx, p);
      for (const int p : b.pre) prod.net.add_arc_pt(p + offset, idx);
      for (const int p : b.post) prod.net.add_arc_tp(idx, p + offset);
      prod.moves.push_back(
          {MoveKind::sync, static_cast<int>(lt), static_cast<int>(mt)});
    }
  }
  for (const auto& [p, c] : log_net.initial_marking.entries) {
    prod.net.initial_marking.add(p, c);
  }
  for (const auto& [p, c] : model.initial_marking.entries) {
    prod.net.initial_marking.add(p + offset, c);
  }
  for (const auto& [p, c] : log_net.final_marking.entries) {
    prod.net.final_marking.add(p, c);
  }
  for (const auto& [p, c] : model.final_marking.entries) {
    prod.net.final_marking.add(p + offset, c);
  }
  return prod;
}

inline std::string to_dot(const PetriNet& net) {
  std::string out = "digraph petri_net {\n  rankdir=LR;\n";
  for (std::size_t p = 0; p < net.places.size(); ++p) {
    const int tokens = net.initial_marking.tokens(static_cast<int>(p));
    std::string label;
    for (int i = 0; i < tokens; ++i) label += "•";
    out += "  p" + std::to_string(p) + " [shape=circle, label=\"" + label +
           "\", xlabel=\"" + detail::dot_escape(net.places[p]) + "\"";
    if (net.final_marking.tokens(static_cast<int>(p)) > 0) {
      out += ", peripheries=2";
    }
    out += "];\n";
  }
  for (std::size_t t = 0; t < net.transitions.size(); ++t) {
    const Transition& tr = net.transitions[t];
    out += "  t" + std::to_string(t) + " [shape=box, label=\"" +
           (tr.silent() ? std::string() : detail::dot_escape(*tr.label)) + "\"";
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
