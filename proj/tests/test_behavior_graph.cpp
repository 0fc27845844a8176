#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>
#include <set>

#include "upm/behavior_graph.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace upm;

namespace {

std::set<std::pair<std::string, std::string>> edge_ids(const BehaviorGraph& g) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [u, v] : g.edges()) {
    out.insert({g.nodes[static_cast<std::size_t>(u)].event_id,
                g.nodes[static_cast<std::size_t>(v)].event_id});
  }
  return out;
}

}  // namespace

TEST_CASE("running example behavior graph") {
  const BehaviorGraph g =
      build_behavior_graph(fixtures::running_example_trace());
  REQUIRE(g.nodes.size() == 4);
  const std::set<std::pair<std::string, std::string>> expected{
      {"e1", "e2"}, {"e2", "e4"}, {"e3", "e4"}};
  CHECK(edge_ids(g) == expected);
  for (const BehaviorGraphNode& node : g.nodes) {
    CHECK(node.indeterminate == (node.event_id == "e1"));
  }
}

TEST_CASE("construction matches the definition of transitive reduction") {
  std::mt19937_64 rng(2024);
  generators::TraceOptions opt;
  opt.max_events = 9;
  for (int round = 0; round < 150; ++round) {
    const UncertainTrace t = generators::random_trace(rng, "c", opt);
    CAPTURE(round, t.events.size());
    CHECK(edge_ids(build_behavior_graph(t)) == oracles::reduction_edges(t));
  }
}

TEST_CASE("nodes are stored in topological order") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 30; ++round) {
    const BehaviorGraph g =
        build_behavior_graph(generators::random_trace(rng, "c"));
    for (const auto& [u, v] : g.edges()) CHECK(u < v);
  }
}

TEST_CASE("dot rendering") {
  const std::string dot =
      to_dot(build_behavior_graph(fixtures::running_example_trace()));
  CHECK(dot.find("style=dashed") != std::string::npos);
  CHECK(dot.find("{PrTP, SecTP}") != std::string::npos);
  CHECK(dot.find("xlabel=\"e1\"") != std::string::npos);
  CHECK(dot.find("->") != std::string::npos);
}

TEST_CASE("canonical form ignores ids, times, and event order") {
  UncertainTrace a = fixtures::running_example_trace();
  UncertainTrace b = a;
  std::reverse(b.events.begin(), b.events.end());
  for (std::size_t i = 0; i < b.events.size(); ++i) {
    b.events[i].id = "x" + std::to_string(i);
    b.events[i].time = TimeInterval(b.events[i].time.t_min + 41 * fixtures::kDay,
                                    b.events[i].time.t_max + 41 * fixtures::kDay);
  }
  CHECK(canonical_form(build_behavior_graph(a)) ==
        canonical_form(build_behavior_graph(b)));

  UncertainTrace c = a;
  c.events[0].indeterminate = false;
  CHECK(canonical_form(build_behavior_graph(a)) !=
        canonical_form(build_behavior_graph(c)));
}

TEST_CASE("canonical form agrees with brute-force isomorphism") {
  std::mt19937_64 rng(99);
  generators::TraceOptions opt;
  opt.max_events = 5;
  for (int round = 0; round < 60; ++round) {
    const BehaviorGraph ga =
        build_behavior_graph(generators::random_trace(rng, "a", opt));
    const BehaviorGraph gb =
        build_behavior_graph(generators::random_trace(rng, "b", opt));
    CAPTURE(round);
    CHECK((canonical_form(ga) == canonical_form(gb)) ==
          oracles::isomorphic(ga, gb));
  }
}

TEST_CASE("variant groups are ordered by size") {
  std::mt19937_64 rng(5);
  UncertainLog log = generators::random_log(rng, 30);
  const auto groups = group_variants(log);
  std::size_t total = 0;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    total += groups[i].case_ids.size();
    if (i > 0) {
      CHECK(groups[i - 1].case_ids.size() >= groups[i].case_ids.size());
    }
  }
  CHECK(total == log.traces.size());
}
