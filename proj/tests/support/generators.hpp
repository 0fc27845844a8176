#pragma once

// Seeded random instances for property tests.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "upm/petri_net.hpp"
#include "upm/uncertain_log.hpp"

namespace generators {

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

inline bool chance(std::mt19937_64& rng, double p) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p;
}

struct TraceOptions {
  int min_events = 1;
  int max_events = 6;
  int alphabet = 4;
  double p_multi_label = 0.35;
  double p_interval = 0.45;
  double p_indeterminate = 0.3;
  std::int64_t horizon = 20;
};

inline std::string label_of(int k) {
  return std::string(1, static_cast<char>('A' + k));
}

inline upm::UncertainTrace random_trace(std::mt19937_64& rng,
                                        const std::string& case_id,
                                        const TraceOptions& opt = {}) {
  upm::UncertainTrace trace;
  trace.case_id = case_id;
  const int n = opt.min_events +
                static_cast<int>(below(
                    rng, static_cast<std::uint64_t>(opt.max_events -
                                                    opt.min_events + 1)));
  for (int i = 0; i < n; ++i) {
    upm::UncertainEvent e;
    e.id = "e" + std::to_string(i + 1);
    const int first = static_cast<int>(below(rng, static_cast<std::uint64_t>(opt.alphabet)));
    e.labels.insert(label_of(first));
    if (chance(rng, opt.p_multi_label)) {
      const int second =
          static_cast<int>(below(rng, static_cast<std::uint64_t>(opt.alphabet)));
      e.labels.insert(label_of(second));
    }
    const std::int64_t t = static_cast<std::int64_t>(
        below(rng, static_cast<std::uint64_t>(opt.horizon)));
    std::int64_t width = 0;
    if (chance(rng, opt.p_interval)) {
      width = static_cast<std::int64_t>(
          below(rng, static_cast<std::uint64_t>(opt.horizon / 2 + 1)));
    }
    e.time = upm::TimeInterval(t, t + width);
    e.indeterminate = chance(rng, opt.p_indeterminate);
    trace.events.push_back(std::move(e));
  }
  return trace;
}

inline upm::UncertainLog random_log(std::mt19937_64& rng, int traces,
                                    const TraceOptions& opt = {}) {
  upm::UncertainLog log;
  for (int i = 0; i < traces; ++i) {
    log.traces.push_back(random_trace(rng, "case" + std::to_string(i + 1), opt));
  }
  return log;
}

// Sound workflow net: a chain of blocks, each a single task, an exclusive
// choice, a parallel pair, or a skippable task.
inline upm::PetriNet random_model(std::mt19937_64& rng, int min_blocks = 2,
                                  int max_blocks = 4, int alphabet = 4) {
  upm::PetriNet net;
  int counter = 0;
  const auto fresh_place = [&] {
    return net.add_place("q" + std::to_string(counter++));
  };
  const auto any_label = [&] {
    return label_of(static_cast<int>(below(rng, static_cast<std::uint64_t>(alphabet))));
  };
  int current = fresh_place();
  net.initial_marking.add(current, 1);
  const int blocks =
      min_blocks + static_cast<int>(below(
                       rng, static_cast<std::uint64_t>(max_blocks - min_blocks + 1)));
  for (int b = 0; b < blocks; ++b) {
    const int next = fresh_place();
    const int kind = static_cast<int>(below(rng, 4));
    const auto task = [&](int from, int to, std::optional<std::string> label) {
      const int t = net.add_transition("n" + std::to_string(counter++),
                                       std::move(label));
      net.add_arc_pt(from, t);
      net.add_arc_tp(t, to);
    };
    if (kind == 0) {
      task(current, next, any_label());
    } else if (kind == 1) {
      task(current, next, any_label());
      task(current, next, any_label());
    } else if (kind == 2) {
      task(current, next, any_label());
      task(current, next, std::nullopt);
    } else {
      const int a_in = fresh_place();
      const int b_in = fresh_place();
      const int a_out = fresh_place();
      const int b_out = fresh_place();
      const int split = net.add_transition("n" + std::to_string(counter++),
                                           std::nullopt);
      net.add_arc_pt(current, split);
      net.add_arc_tp(split, a_in);
      net.add_arc_tp(split, b_in);
      task(a_in, a_out, any_label());
      task(b_in, b_out, any_label());
      const int join = net.add_transition("n" + std::to_string(counter++),
                                          std::nullopt);
      net.add_arc_pt(a_out, join);
      net.add_arc_pt(b_out, join);
      net.add_arc_tp(join, next);
    }
    current = next;
  }
  net.final_marking.add(current, 1);
  return net;
}

inline upm::AttributeMap random_attributes(std::mt19937_64& rng, int count) {
  upm::AttributeMap out;
  for (int i = 0; i < count; ++i) {
    const std::string key = "k" + std::to_string(i);
    switch (below(rng, 5)) {
      case 0:
        out[key] = "v" + std::to_string(below(rng, 100));
        break;
      case 1:
        out[key] = static_cast<std::int64_t>(below(rng, 1000)) - 500;
        break;
      case 2:
        out[key] = static_cast<double>(below(rng, 1'000'000)) / 997.0;
        break;
      case 3:
        out[key] = chance(rng, 0.5);
        break;
      default:
        out[key] = upm::DateValue{
            static_cast<std::int64_t>(below(rng, 4'000'000'000'000ull))};
        break;
    }
  }
  return out;
}

}  // namespace generators
