#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "upm/detail/bitset.hpp"
#include "upm/error.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

using Sequence = std::vector<std::string>;

inline constexpr std::size_t kDefaultRealizationCap = 10'000;

// Shortlex: by length, then lexicographically.
struct SequenceLess {
  bool operator()(const Sequence& a, const Sequence& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

using SequenceSet = std::set<Sequence, SequenceLess>;

namespace detail {

inline constexpr std::size_t kMaxRealizationEvents = 4096;
inline constexpr std::size_t kRealizationWorkLimit = 4'000'000;

inline std::vector<const UncertainEvent*> sorted_event_ptrs(
    const UncertainTrace& trace) {
  std::vector<const UncertainEvent*> ev;
  ev.reserve(trace.events.size());
  for (const UncertainEvent& e : trace.events) ev.push_back(&e);
  std::sort(ev.begin(), ev.end(),
            [](const UncertainEvent* a, const UncertainEvent* b) {
              if (a->time.t_min != b->time.t_min) {
                return a->time.t_min < b->time.t_min;
              }
              if (a->time.t_max != b->time.t_max) {
                return a->time.t_max < b->time.t_max;
              }
              return a->id < b->id;
            });
  return ev;
}

}  // namespace detail

// All distinct label sequences obtainable by dropping a subset of the
// indeterminate events, picking one label per remaining event, and ordering
// the rest along a linear extension of certain precedence. Shortlex sorted.
// Throws cap_exceeded once more than `cap` distinct sequences exist.
inline std::vector<Sequence> enumerate_realizations(
    const UncertainTrace& trace, std::size_t cap = kDefaultRealizationCap) {
  const std::size_t n = trace.events.size();
  for (const UncertainEvent& e : trace.events) {
    if (e.labels.empty()) {
      throw Error(ErrorCode::empty_label_set,
                  "event " + e.id + " has no possible activity label");
    }
  }
  if (n == 0) return {Sequence{}};

  const std::vector<const UncertainEvent*> ev = detail::sorted_event_ptrs(trace);

  bool certain_chain = true;
  for (std::size_t i = 0; i < n && certain_chain; ++i) {
    if (ev[i]->indeterminate || ev[i]->labels.size() != 1) certain_chain = false;
    if (i + 1 < n && !certainly_precedes(*ev[i], *ev[i + 1])) {
      certain_chain = false;
    }
  }
  if (certain_chain) {
    if (cap < 1) throw Error(ErrorCode::cap_exceeded, "realization cap is 0");
    Sequence seq;
    seq.reserve(n);
    for (const UncertainEvent* e : ev) seq.push_back(*e->labels.begin());
    return {std::move(seq)};
  }

  if (n > detail::kMaxRealizationEvents) {
    throw Error(ErrorCode::cap_exceeded,
                "trace has " + std::to_string(n) +
                    " events; realization enumeration is limited to " +
                    std::to_string(detail::kMaxRealizationEvents));
  }

  detail::Bitset det(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!ev[i]->indeterminate) det.set(i);
  }
  std::vector<detail::Bitset> anc(n, detail::Bitset(n));
  std::vector<detail::Bitset> desc(n, detail::Bitset(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (certainly_precedes(*ev[u], *ev[v])) {
        anc[v].set(u);
        desc[u].set(v);
      }
    }
  }

  SequenceSet out;
  Sequence prefix;
  std::size_t work = 0;

  const auto emitted = [&](const detail::Bitset& s) {
    if (s.intersects(det)) return;
    out.insert(prefix);
    if (out.size() > cap) {
      throw Error(ErrorCode::cap_exceeded,
                  "more than " + std::to_string(cap) + " realizations");
    }
  };

  // Two pending events with equal labels, equal indeterminacy, and equal
  // remaining ancestor and descendant sets are swapped by an automorphism of
  // the remaining order, so only the first is branched on.
  struct CandidateKey {
    const LabelSet* labels;
    bool indeterminate;
    detail::Bitset anc_rem;
    detail::Bitset desc_rem;
  };

  std::function<void(const detail::Bitset&)> go =
      [&](const detail::Bitset& s) {
        emitted(s);
        std::vector<CandidateKey> seen;
        s.for_each([&](std::size_t e) {
          if (detail::Bitset::intersects3(anc[e], s, det)) return;
          detail::Bitset anc_rem = anc[e];
          anc_rem &= s;
          detail::Bitset desc_rem = desc[e];
          desc_rem &= s;
          for (const CandidateKey& k : seen) {
            if (k.indeterminate == ev[e]->indeterminate &&
                *k.labels == ev[e]->labels && k.anc_rem == anc_rem &&
                k.desc_rem == desc_rem) {
              return;
            }
          }
          seen.push_back({&ev[e]->labels, ev[e]->indeterminate, anc_rem,
                          desc_rem});
          detail::Bitset next = s;
          next.andnot(anc[e]);
          next.reset(e);
          for (const std::string& label : ev[e]->labels) {
            if (++work > detail::kRealizationWorkLimit) {
              throw Error(ErrorCode::cap_exceeded,
                          "realization exploration limit reached");
            }
            prefix.push_back(label);
            go(next);
            prefix.pop_back();
          }
        });
      };

  detail::Bitset all(n);
  for (std::size_t i = 0; i < n; ++i) all.set(i);
  go(all);
  return {out.begin(), out.end()};
}

inline std::size_t count_realizations(const UncertainTrace& trace,
                                      std::size_t cap = kDefaultRealizationCap) {
  return enumerate_realizations(trace, cap).size();
}

}  // namespace upm
