#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "upm/error.hpp"
#include "upm/uncertain_log.hpp"

namespace upm {

// Controlled uncertainty injection. Every change widens the event: original
// labels stay possible, the original interval is contained in the new one,
// and indeterminacy only flips from false to true.
struct UncertaintySpec {
  double p_activity = 0.0;
  int extra_labels = 1;
  std::optional<std::vector<std::string>> dictionary;  // nullopt: labels of the log
  double p_timestamp = 0.0;
  std::int64_t half_width_ms = 0;
  double p_indeterminate = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t fnv1a64(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

// One engine per event, keyed by (seed, case id, 0x00, event id), so output
// does not depend on processing order or thread count.
inline std::uint64_t event_rng_key(std::uint64_t seed, const std::string& case_id,
                                   const std::string& event_id) {
  unsigned char seed_bytes[8];
  for (int i = 0; i < 8; ++i) {
    seed_bytes[i] = static_cast<unsigned char>((seed >> (8 * i)) & 0xff);
  }
  std::uint64_t h = 14695981039346656037ull;
  h = fnv1a64(h, seed_bytes, 8);
  h = fnv1a64(h, case_id.data(), case_id.size());
  const unsigned char sep = 0;
  h = fnv1a64(h, &sep, 1);
  h = fnv1a64(h, event_id.data(), event_id.size());
  return h;
}

// std::uniform_* distributions differ across standard libraries; raw engine
// output keeps results reproducible everywhere.
inline double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t draw_below(std::mt19937_64& eng, std::uint64_t n) {
  return eng() % n;
}

}  // namespace detail

inline UncertainLog inject_uncertainty(const UncertainLog& log,
                                       const UncertaintySpec& spec) {
  const auto check_probability = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw Error(ErrorCode::invalid_spec,
                  std::string(name) + " must be in [0, 1]");
    }
  };
  check_probability(spec.p_activity, "p_activity");
  check_probability(spec.p_timestamp, "p_timestamp");
  check_probability(spec.p_indeterminate, "p_indeterminate");
  if (spec.half_width_ms < 0) {
    throw Error(ErrorCode::invalid_spec, "half_width_ms must be >= 0");
  }
  if (spec.p_activity > 0.0 && spec.extra_labels < 1) {
    throw Error(ErrorCode::invalid_spec,
                "extra_labels must be >= 1 when p_activity > 0");
  }

  std::vector<std::string> dictionary;
  if (spec.dictionary.has_value()) {
    const std::set<std::string> dedup(spec.dictionary->begin(),
                                      spec.dictionary->end());
    dictionary.assign(dedup.begin(), dedup.end());
  } else {
    const LabelSet labels = log_labels(log);
    dictionary.assign(labels.begin(), labels.end());
  }

  if (spec.p_activity > 0.0) {
    for (const UncertainTrace& trace : log.traces) {
      for (const UncertainEvent& e : trace.events) {
        std::size_t overlap = 0;
        for (const std::string& l : e.labels) {
          if (std::binary_search(dictionary.begin(), dictionary.end(), l)) {
            ++overlap;
          }
        }
        const std::size_t candidates = dictionary.size() - overlap;
        if (candidates < static_cast<std::size_t>(spec.extra_labels)) {
          throw Error(ErrorCode::dictionary_too_small,
                      "event " + e.id + " has only " +
                          std::to_string(candidates) +
                          " candidate labels, needs " +
                          std::to_string(spec.extra_labels));
        }
      }
    }
  }

  UncertainLog out = log;
  for (UncertainTrace& trace : out.traces) {
    for (UncertainEvent& e : trace.events) {
      std::mt19937_64 eng(
          detail::event_rng_key(spec.seed, trace.case_id, e.id));
      if (detail::uniform01(eng) < spec.p_activity) {
        std::vector<std::string> candidates;
        candidates.reserve(dictionary.size());
        for (const std::string& l : dictionary) {
          if (!e.labels.count(l)) candidates.push_back(l);
        }
        for (int k = 0; k < spec.extra_labels; ++k) {
          const std::size_t j =
              static_cast<std::size_t>(k) +
              static_cast<std::size_t>(detail::draw_below(
                  eng, candidates.size() - static_cast<std::size_t>(k)));
          std::swap(candidates[static_cast<std::size_t>(k)], candidates[j]);
          e.labels.insert(candidates[static_cast<std::size_t>(k)]);
        }
      }
      if (detail::uniform01(eng) < spec.p_timestamp) {
        const std::int64_t lo = static_cast<std::int64_t>(detail::draw_below(
            eng, static_cast<std::uint64_t>(spec.half_width_ms) + 1));
        const std::int64_t hi = static_cast<std::int64_t>(detail::draw_below(
            eng, static_cast<std::uint64_t>(spec.half_width_ms) + 1));
        e.time = TimeInterval(e.time.t_min - lo, e.time.t_max + hi);
      }
      if (detail::uniform01(eng) < spec.p_indeterminate) {
        e.indeterminate = true;
      }
    }
  }
  return out;
}

}  // namespace upm
