#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "upm/detail/dot.hpp"
#include "upm/detail/parallel.hpp"
#include "upm/error.hpp"
#include "upm/realizations.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

struct Udfg {
  std::map<std::string, CountBounds> activities;
  std::map<std::pair<std::string, std::string>, CountBounds> edges;
  std::map<std::string, CountBounds> start_activities;
  std::map<std::string, CountBounds> end_activities;
};

struct TraceDfBounds {
  std::map<std::pair<std::string, std::string>, CountBounds> edges;
  std::map<std::string, CountBounds> start_activities;
  std::map<std::string, CountBounds> end_activities;
};

// Bounds on directly-follows counts of one trace: the minimum and maximum
// number of times b immediately follows a, over all realizations.
inline TraceDfBounds trace_df_bounds(const UncertainTrace& trace,
                                     std::size_t cap = kDefaultRealizationCap) {
  const std::vector<Sequence> seqs = enumerate_realizations(trace, cap);
  std::vector<std::map<std::pair<std::string, std::string>, std::int64_t>>
      edge_counts(seqs.size());
  std::vector<std::map<std::string, std::int64_t>> start_counts(seqs.size());
  std::vector<std::map<std::string, std::int64_t>> end_counts(seqs.size());
  for (std::size_t i = 0; i < seqs.size(); ++i) {
    const Sequence& s = seqs[i];
    for (std::size_t k = 0; k + 1 < s.size(); ++k) {
      ++edge_counts[i][{s[k], s[k + 1]}];
    }
    if (!s.empty()) {
      ++start_counts[i][s.front()];
      ++end_counts[i][s.back()];
    }
  }
  TraceDfBounds out;
  const auto fold = [&](const auto& per_seq, auto& target) {
    for (const auto& counts : per_seq) {
      for (const auto& [key, value] : counts) {
        (void)value;
        target.try_emplace(key);
      }
    }
    for (auto& [key, bounds] : target) {
      std::int64_t lo = 0, hi = 0;
      bool first = true;
      for (const auto& counts : per_seq) {
        const auto it = counts.find(key);
        const std::int64_t c = it == counts.end() ? 0 : it->second;
        lo = first ? c : std::min(lo, c);
        hi = first ? c : std::max(hi, c);
        first = false;
      }
      bounds = {lo, hi};
    }
  };
  fold(edge_counts, out.edges);
  fold(start_counts, out.start_activities);
  fold(end_counts, out.end_activities);
  return out;
}

struct UdfgResult {
  Udfg udfg;
  std::vector<std::string> skipped;  // case ids past the realization cap
};

// Entrywise sum of per-trace bounds. Traces whose realizations exceed the
// cap are skipped and reported, not partially counted.
inline UdfgResult discover_udfg(const UncertainLog& log,
                                std::size_t cap = kDefaultRealizationCap,
                                int jobs = 1) {
  struct PerTrace {
    bool skipped = false;
    TraceDfBounds bounds;
  };
  std::vector<PerTrace> per_trace(log.traces.size());
  detail::parallel_for(log.traces.size(), jobs, [&](std::size_t i) {
    try {
      per_trace[i].bounds = trace_df_bounds(log.traces[i], cap);
    } catch (const Error& ex) {
      if (ex.code() != ErrorCode::cap_exceeded) throw;
      per_trace[i].skipped = true;
    }
  });
  UdfgResult out;
  for (std::size_t i = 0; i < log.traces.size(); ++i) {
    const UncertainTrace& trace = log.traces[i];
    if (per_trace[i].skipped) {
      out.skipped.push_back(trace.case_id);
      continue;
    }
    for (const std::string& label : trace_labels(trace)) {
      const CountBounds b = activity_count_bounds(trace, label);
      CountBounds& acc = out.udfg.activities[label];
      acc.min_count += b.min_count;
      acc.max_count += b.max_count;
    }
    const auto accumulate = [](auto& target, const auto& source) {
      for (const auto& [key, b] : source) {
        auto& acc = target[key];
        acc.min_count += b.min_count;
        acc.max_count += b.max_count;
      }
    };
    accumulate(out.udfg.edges, per_trace[i].bounds.edges);
    accumulate(out.udfg.start_activities, per_trace[i].bounds.start_activities);
    accumulate(out.udfg.end_activities, per_trace[i].bounds.end_activities);
  }
  return out;
}

enum class BoundSemantics { min, max };

inline std::int64_t bound_value(const CountBounds& b, BoundSemantics semantics) {
  return semantics == BoundSemantics::min ? b.min_count : b.max_count;
}

// Keeps activities whose chosen bound reaches act_threshold and edges whose
// chosen bound reaches edge_threshold with both endpoints kept.
inline Udfg filter_udfg(const Udfg& in, std::int64_t act_threshold,
                        std::int64_t edge_threshold, BoundSemantics semantics) {
  Udfg out;
  for (const auto& [label, b] : in.activities) {
    if (bound_value(b, semantics) >= act_threshold) out.activities[label] = b;
  }
  for (const auto& [key, b] : in.edges) {
    if (bound_value(b, semantics) < edge_threshold) continue;
    if (!out.activities.count(key.first) || !out.activities.count(key.second)) {
      continue;
    }
    out.edges[key] = b;
  }
  for (const auto& [label, b] : in.start_activities) {
    if (bound_value(b, semantics) >= edge_threshold &&
        out.activities.count(label)) {
      out.start_activities[label] = b;
    }
  }
  for (const auto& [label, b] : in.end_activities) {
    if (bound_value(b, semantics) >= edge_threshold &&
        out.activities.count(label)) {
      out.end_activities[label] = b;
    }
  }
  return out;
}

inline std::string to_dot(const Udfg& udfg) {
  std::string out = "digraph udfg {\n  rankdir=LR;\n";
  out += "  start [shape=circle, style=filled, fillcolor=black, label=\"\"];\n";
  out += "  end [shape=doublecircle, style=filled, fillcolor=black, label=\"\"];\n";
  std::map<std::string, std::size_t> index;
  for (const auto& [label, b] : udfg.activities) {
    const std::size_t k = index.size();
    index[label] = k;
    out += "  a" + std::to_string(k) + " [shape=box, label=\"" +
           detail::dot_escape(label) + "\\n" + std::to_string(b.min_count) +
           "/" + std::to_string(b.max_count) + "\"];\n";
  }
  for (const auto& [label, b] : udfg.start_activities) {
    out += "  start -> a" + std::to_string(index.at(label)) + " [label=\"" +
           std::to_string(b.min_count) + "/" + std::to_string(b.max_count) +
           "\"];\n";
  }
  for (const auto& [key, b] : udfg.edges) {
    out += "  a" + std::to_string(index.at(key.first)) + " -> a" +
           std::to_string(index.at(key.second)) + " [label=\"" +
           std::to_string(b.min_count) + "/" + std::to_string(b.max_count) +
           "\"];\n";
  }
  for (const auto& [label, b] : udfg.end_activities) {
    out += "  a" + std::to_string(index.at(label)) + " -> end [label=\"" +
           std::to_string(b.min_count) + "/" + std::to_string(b.max_count) +
           "\"];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace upm
