// End-to-end tour on a four-event trace: one event of uncertain occurrence,
// one with two possible labels, one dated only to an interval.

#include <cstdio>
#include <string>

#include "upm/upm.hpp"

namespace {

upm::Timestamp day(int d) { return static_cast<upm::Timestamp>(d) * 86'400'000; }

upm::UncertainTrace example_trace() {
  upm::UncertainTrace t;
  t.case_id = "ID192";
  t.events.push_back(
      {"e1", {"NightSweats"}, upm::TimeInterval(day(5)), true, {}});
  t.events.push_back(
      {"e2", {"PrTP", "SecTP"}, upm::TimeInterval(day(8)), false, {}});
  t.events.push_back(
      {"e3", {"Splenomeg"}, upm::TimeInterval(day(4), day(10)), false, {}});
  t.events.push_back({"e4", {"Adm"}, upm::TimeInterval(day(12)), false, {}});
  return t;
}

upm::PetriNet example_model() {
  upm::PetriNet net;
  int prev = net.add_place("s0");
  net.initial_marking.add(prev, 1);
  int k = 0;
  for (const std::string label :
       {"NightSweats", "PrTP", "Splenomeg", "Adm"}) {
    const int t = net.add_transition("t" + std::to_string(k), label);
    const int next = net.add_place("s" + std::to_string(++k));
    net.add_arc_pt(prev, t);
    net.add_arc_tp(t, next);
    prev = next;
  }
  net.final_marking.add(prev, 1);
  return net;
}

}  // namespace

int main() {
  const upm::UncertainTrace trace = example_trace();
  upm::UncertainLog log;
  log.traces.push_back(trace);

  const upm::BehaviorGraph graph = upm::build_behavior_graph(trace);
  std::printf("behavior graph: %zu nodes, %zu edges\n", graph.nodes.size(),
              graph.edges().size());
  for (const auto& [u, v] : graph.edges()) {
    std::printf("  %s -> %s\n",
                graph.nodes[static_cast<std::size_t>(u)].event_id.c_str(),
                graph.nodes[static_cast<std::size_t>(v)].event_id.c_str());
  }

  const upm::BehaviorNet bn = upm::build_behavior_net(graph);
  std::printf("behavior net: %zu places, %zu transitions\n",
              bn.net.places.size(), bn.net.transitions.size());

  const std::vector<upm::Sequence> seqs = upm::enumerate_realizations(trace);
  std::printf("realizations: %zu\n", seqs.size());
  for (const upm::Sequence& s : seqs) {
    std::string line;
    for (const std::string& label : s) {
      if (!line.empty()) line += ", ";
      line += label;
    }
    std::printf("  <%s>\n", line.c_str());
  }

  const upm::PetriNet model = example_model();
  const upm::ConformanceBounds bounds = upm::bounds_exhaustive(trace, model);
  std::printf("conformance cost bounds: [%lld, %lld]\n",
              static_cast<long long>(bounds.lower),
              static_cast<long long>(bounds.upper));

  const upm::Udfg udfg = upm::discover_udfg(log).udfg;
  std::printf("uncertain directly-follows edges:\n");
  for (const auto& [key, b] : udfg.edges) {
    std::printf("  %s -> %s: %lld..%lld\n", key.first.c_str(),
                key.second.c_str(), static_cast<long long>(b.min_count),
                static_cast<long long>(b.max_count));
  }

  const upm::LogStatistics stats = upm::log_statistics(log);
  std::printf("log: %zu traces, %zu events, %zu uncertain events\n",
              stats.n_traces, stats.n_events, stats.n_uncertain_events);
  return 0;
}
