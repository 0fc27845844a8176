#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <queue>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "upm/behavior_net.hpp"
#include "upm/detail/parallel.hpp"
#include "upm/error.hpp"
#include "upm/petri_net.hpp"
#include "upm/realizations.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

struct AlignmentStep {
  MoveKind kind = MoveKind::sync;
  std::string label;             // empty for silent moves
  std::string model_transition;  // empty for log moves
  bool silent = false;
};

struct Alignment {
  std::vector<AlignmentStep> steps;
  std::int64_t cost = 0;
};

struct AlignOptions {
  std::size_t max_markings = 1'000'000;
};

inline PetriNet trace_net(const Sequence& word) {
  PetriNet net;
  const int first = net.add_place("p0");
  net.initial_marking.add(first, 1);
  int prev = first;
  for (std::size_t i = 0; i < word.size(); ++i) {
    const int t = net.add_transition("t" + std::to_string(i), word[i]);
    const int next = net.add_place("p" + std::to_string(i + 1));
    net.add_arc_pt(prev, t);
    net.add_arc_tp(t, next);
    prev = next;
  }
  net.final_marking.add(prev, 1);
  return net;
}

namespace detail {

// Unit cost for labeled log and model moves, zero for sync and silent moves.
inline std::int64_t move_cost(const SyncProduct& prod, std::size_t t) {
  if (prod.moves[t].kind == MoveKind::sync) return 0;
  return prod.net.transitions[t].silent() ? 0 : 1;
}

struct ProductPath {
  std::int64_t cost = 0;
  std::vector<int> fired;
};

// Minimum-cost run of the product from initial to final marking. Ties are
// broken deterministically: after a forward Dijkstra settles every marking
// with distance <= C* and a backward Dijkstra over those markings computes
// remaining distances, the run is rebuilt greedily, always taking the tight
// step with the smallest (kind, label, id) key whose target was settled
// earlier in the backward pass. Backward settle order strictly decreases
// along the walk, so it terminates.
inline ProductPath product_align(const SyncProduct& prod,
                                 const AlignOptions& opts) {
  const PetriNet& net = prod.net;
  const std::size_t tcount = net.transitions.size();
  std::vector<std::int64_t> cost(tcount);
  for (std::size_t t = 0; t < tcount; ++t) cost[t] = move_cost(prod, t);

  constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
  std::vector<Marking> states;
  std::unordered_map<Marking, int, MarkingHash> ids;
  std::vector<std::int64_t> dist;
  std::vector<bool> settled;
  const auto intern = [&](const Marking& m) -> int {
    const auto it = ids.find(m);
    if (it != ids.end()) return it->second;
    if (states.size() >= opts.max_markings) {
      throw Error(ErrorCode::state_space_exceeded,
                  "alignment search exceeded " +
                      std::to_string(opts.max_markings) + " markings");
    }
    const int k = static_cast<int>(states.size());
    states.push_back(m);
    ids.emplace(m, k);
    dist.push_back(kInf);
    settled.push_back(false);
    return k;
  };

  using Entry = std::pair<std::int64_t, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  const int start = intern(net.initial_marking);
  dist[static_cast<std::size_t>(start)] = 0;
  queue.push({0, start});
  std::int64_t best = kInf;
  int final_id = -1;
  while (!queue.empty()) {
    const auto [d, s] = queue.top();
    queue.pop();
    if (best < kInf && d > best) break;
    if (settled[static_cast<std::size_t>(s)]) continue;
    settled[static_cast<std::size_t>(s)] = true;
    if (final_id < 0 && states[static_cast<std::size_t>(s)] == net.final_marking) {
      best = d;
      final_id = s;
    }
    for (std::size_t t = 0; t < tcount; ++t) {
      if (!is_enabled(states[static_cast<std::size_t>(s)], net.transitions[t])) {
        continue;
      }
      const Marking next = fire(states[static_cast<std::size_t>(s)], net.transitions[t]);
      const int k = intern(next);
      const std::int64_t nd = d + cost[t];
      if (nd < dist[static_cast<std::size_t>(k)]) {
        dist[static_cast<std::size_t>(k)] = nd;
        queue.push({nd, k});
      }
    }
  }
  if (final_id < 0) {
    throw Error(ErrorCode::unreachable,
                "the final marking cannot be reached");
  }

  std::vector<std::int64_t> dist_goal(states.size(), kInf);
  std::vector<int> order(states.size(), -1);
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> back;
  dist_goal[static_cast<std::size_t>(final_id)] = 0;
  back.push({0, final_id});
  int settle_counter = 0;
  while (!back.empty()) {
    const auto [d, s] = back.top();
    back.pop();
    if (order[static_cast<std::size_t>(s)] >= 0) continue;
    order[static_cast<std::size_t>(s)] = settle_counter++;
    const Marking& m = states[static_cast<std::size_t>(s)];
    for (std::size_t t = 0; t < tcount; ++t) {
      const Transition& tr = net.transitions[t];
      // reverse firing: prev = m - post + pre, defined when m >= post
      bool ok = true;
      std::size_t i = 0;
      while (ok && i < tr.post.size()) {
        const int place = tr.post[i];
        std::size_t j = i;
        while (j < tr.post.size() && tr.post[j] == place) ++j;
        if (m.tokens(place) < static_cast<int>(j - i)) ok = false;
        i = j;
      }
      if (!ok) continue;
      Marking prev = m;
      for (const int p : tr.post) prev.add(p, -1);
      for (const int p : tr.pre) prev.add(p, 1);
      const auto it = ids.find(prev);
      if (it == ids.end() || !settled[static_cast<std::size_t>(it->second)]) {
        continue;
      }
      const std::int64_t nd = d + cost[t];
      if (nd < dist_goal[static_cast<std::size_t>(it->second)]) {
        dist_goal[static_cast<std::size_t>(it->second)] = nd;
        back.push({nd, it->second});
      }
    }
  }
  if (dist_goal[static_cast<std::size_t>(start)] != best) {
    throw Error(ErrorCode::unreachable,
                "the final marking cannot be reached");
  }

  ProductPath path;
  path.cost = best;
  int cur = start;
  std::int64_t remaining = best;
  while (cur != final_id) {
    int best_t = -1;
    int best_next = -1;
    std::tuple<int, std::string, std::string> best_key;
    for (std::size_t t = 0; t < tcount; ++t) {
      if (!is_enabled(states[static_cast<std::size_t>(cur)], net.transitions[t])) {
        continue;
      }
      const Marking next = fire(states[static_cast<std::size_t>(cur)], net.transitions[t]);
      const auto it = ids.find(next);
      if (it == ids.end()) continue;
      const std::size_t k = static_cast<std::size_t>(it->second);
      if (dist_goal[k] >= kInf) continue;
      if (cost[t] + dist_goal[k] != remaining) continue;
      if (order[k] < 0 || order[k] >= order[static_cast<std::size_t>(cur)]) {
        continue;
      }
      const int kind_rank = prod.moves[t].kind == MoveKind::sync ? 0
                            : prod.moves[t].kind == MoveKind::log ? 1
                                                                  : 2;
      std::tuple<int, std::string, std::string> key{
          kind_rank, net.transitions[t].label.value_or(std::string()),
          net.transitions[t].id};
      if (best_t < 0 || key < best_key) {
        best_t = static_cast<int>(t);
        best_next = it->second;
        best_key = std::move(key);
      }
    }
    if (best_t < 0) {
      throw Error(ErrorCode::unreachable, "alignment reconstruction failed");
    }
    path.fired.push_back(best_t);
    remaining -= cost[static_cast<std::size_t>(best_t)];
    cur = best_next;
  }
  return path;
}

inline Alignment decorate(const SyncProduct& prod, const PetriNet& model,
                          const ProductPath& path, bool drop_silent_log) {
  Alignment out;
  out.cost = path.cost;
  for (const int t : path.fired) {
    const std::size_t ti = static_cast<std::size_t>(t);
    const Move& move = prod.moves[ti];
    const bool silent = prod.net.transitions[ti].silent();
    if (drop_silent_log && move.kind == MoveKind::log && silent) continue;
    AlignmentStep step;
    step.kind = move.kind;
    step.label = prod.net.transitions[ti].label.value_or(std::string());
    step.silent = silent;
    if (move.model_transition >= 0) {
      step.model_transition =
          model.transitions[static_cast<std::size_t>(move.model_transition)].id;
    }
    out.steps.push_back(std::move(step));
  }
  return out;
}

}  // namespace detail

// Optimal alignment of one certain label sequence against a model.
inline Alignment align(const Sequence& word, const PetriNet& model,
                       const AlignOptions& opts = {}) {
  const SyncProduct prod = sync_product(trace_net(word), model);
  const detail::ProductPath path = detail::product_align(prod, opts);
  return detail::decorate(prod, model, path, false);
}

struct ConformanceBounds {
  std::int64_t lower = 0;
  std::int64_t upper = 0;
  Alignment best;
  Alignment worst;
  Sequence best_realization;
  Sequence worst_realization;
};

// Exact bounds: the alignment cost of every realization, minimised and
// maximised. Throws cap_exceeded when the realizations do not fit the cap.
inline ConformanceBounds bounds_exhaustive(const UncertainTrace& trace,
                                           const PetriNet& model,
                                           std::size_t cap = kDefaultRealizationCap,
                                           const AlignOptions& opts = {}) {
  const std::vector<Sequence> seqs = enumerate_realizations(trace, cap);
  ConformanceBounds out;
  bool first = true;
  for (const Sequence& seq : seqs) {
    Alignment a = align(seq, model, opts);
    if (first || a.cost < out.lower) {
      out.lower = a.cost;
      out.best = a;
      out.best_realization = seq;
    }
    if (first || a.cost > out.upper) {
      out.upper = a.cost;
      out.worst = std::move(a);
      out.worst_realization = seq;
    }
    first = false;
  }
  return out;
}

struct OptimizedBounds {
  std::int64_t lower = 0;
  Alignment best;
  Sequence best_realization;
};

// Lower bound without enumerating realizations: one search over the product
// of the behavior net with the model. Skipped indeterminate events appear as
// free silent log moves and are dropped from the reported alignment.
inline OptimizedBounds bounds_optimized(const UncertainTrace& trace,
                                        const PetriNet& model,
                                        const AlignOptions& opts = {}) {
  const BehaviorNet bn = build_behavior_net(trace);
  const SyncProduct prod = sync_product(bn.net, model);
  const detail::ProductPath path = detail::product_align(prod, opts);
  OptimizedBounds out;
  out.lower = path.cost;
  out.best = detail::decorate(prod, model, path, true);
  for (const AlignmentStep& step : out.best.steps) {
    if (step.kind != MoveKind::model && !step.label.empty()) {
      out.best_realization.push_back(step.label);
    }
  }
  return out;
}

enum class BoundsMode { exhaustive, optimized };

struct TraceBoundsReport {
  std::string case_id;
  std::string status;  // ok, cap_exceeded, upper_cap_exceeded, unreachable, state_space_exceeded
  std::optional<std::int64_t> lower;
  std::optional<std::int64_t> upper;
};

inline std::vector<TraceBoundsReport> bounds_log(
    const UncertainLog& log, const PetriNet& model,
    BoundsMode mode = BoundsMode::exhaustive,
    std::size_t cap = kDefaultRealizationCap, const AlignOptions& opts = {},
    int jobs = 1) {
  std::vector<TraceBoundsReport> reports(log.traces.size());
  detail::parallel_for(log.traces.size(), jobs, [&](std::size_t i) {
    const UncertainTrace& trace = log.traces[i];
    TraceBoundsReport& r = reports[i];
    r.case_id = trace.case_id;
    r.status = "ok";
    try {
      if (mode == BoundsMode::exhaustive) {
        const ConformanceBounds b = bounds_exhaustive(trace, model, cap, opts);
        r.lower = b.lower;
        r.upper = b.upper;
      } else {
        const OptimizedBounds ob = bounds_optimized(trace, model, opts);
        r.lower = ob.lower;
        try {
          const ConformanceBounds b = bounds_exhaustive(trace, model, cap, opts);
          r.upper = b.upper;
        } catch (const Error& ex) {
          if (ex.code() == ErrorCode::cap_exceeded) {
            r.status = "upper_cap_exceeded";
          } else if (ex.code() == ErrorCode::state_space_exceeded) {
            r.status = "state_space_exceeded";
          } else {
            throw;
          }
        }
      }
    } catch (const Error& ex) {
      switch (ex.code()) {
        case ErrorCode::cap_exceeded:
          r.status = "cap_exceeded";
          break;
        case ErrorCode::unreachable:
          r.status = "unreachable";
          break;
        case ErrorCode::state_space_exceeded:
          r.status = "state_space_exceeded";
          break;
        default:
          throw;
      }
    }
  });
  return reports;
}

}  // namespace upm
