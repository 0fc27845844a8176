#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "upm/upm.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw upm::Error(upm::ErrorCode::io_error, "cannot read " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw upm::Error(upm::ErrorCode::io_error, "cannot write " + path);
  }
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

struct TraceSelector {
  std::string case_id;
  int index = -1;

  const upm::UncertainTrace& pick(const upm::UncertainLog& log) const {
    if (!case_id.empty()) {
      for (const upm::UncertainTrace& t : log.traces) {
        if (t.case_id == case_id) return t;
      }
      throw upm::Error(upm::ErrorCode::trace_not_found,
                       "no trace with case id '" + case_id + "'");
    }
    if (index >= 0) {
      if (static_cast<std::size_t>(index) >= log.traces.size()) {
        throw upm::Error(upm::ErrorCode::trace_not_found,
                         "trace index " + std::to_string(index) +
                             " out of range (log has " +
                             std::to_string(log.traces.size()) + " traces)");
      }
      return log.traces[static_cast<std::size_t>(index)];
    }
    throw upm::Error(upm::ErrorCode::trace_not_found,
                     "select a trace with --case or --index");
  }
};

std::size_t default_cap() {
  if (const char* env = std::getenv("UNCERTAIN_PROC_CAP")) {
    try {
      const long long v = std::stoll(env);
      if (v >= 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
    throw CLI::ValidationError("UNCERTAIN_PROC_CAP",
                               "must be a nonnegative integer");
  }
  return upm::kDefaultRealizationCap;
}

std::string dump(const upm::Json& j) { return j.dump(2); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"process mining over uncertain event data"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string output;
  app.add_option("-o,--output", output, "output file (default: stdout)")
      ->capture_default_str();

  std::string log_path, model_path, format, case_id, dictionary_csv;
  int index = -1;
  int jobs = 1;
  bool lenient = false;
  std::size_t cap = 0;
  bool cap_given = false;
  std::string mode = "exhaustive";
  std::string semantics = "max";
  std::int64_t act_threshold = 0, edge_threshold = 0;
  std::size_t max_markings = 1'000'000;
  upm::UncertaintySpec spec;

  const auto add_log_arg = [&](CLI::App* cmd) {
    cmd->add_option("log", log_path, "uncertain event log (XES)")->required();
    cmd->add_flag("--lenient", lenient,
                  "tolerate point timestamps outside declared intervals");
  };
  const auto add_selector = [&](CLI::App* cmd, bool required) {
    auto* c = cmd->add_option("--case", case_id, "select a trace by case id");
    auto* i =
        cmd->add_option("--index", index, "select a trace by 0-based index");
    c->excludes(i);
    if (required) {
      // one of the two, enforced at run time for a uniform error message
    }
  };
  const auto add_cap = [&](CLI::App* cmd) {
    cmd->add_option("--cap", cap,
                    "realization cap (default 10000, or UNCERTAIN_PROC_CAP)")
        ->each([&](const std::string&) { cap_given = true; });
  };

  auto* stats = app.add_subcommand("stats", "log statistics");
  add_log_arg(stats);

  auto* variants = app.add_subcommand("variants",
                                      "group traces by behavior graph shape");
  add_log_arg(variants);

  auto* graph = app.add_subcommand("graph", "behavior graph of one trace");
  add_log_arg(graph);
  add_selector(graph, true);
  graph->add_option("--format", format, "json or dot (default json)");

  auto* net = app.add_subcommand("net", "behavior net of one trace");
  add_log_arg(net);
  add_selector(net, true);
  net->add_option("--format", format, "pnml or dot (default pnml)");

  auto* realizations =
      app.add_subcommand("realizations", "realizations of one trace");
  add_log_arg(realizations);
  add_selector(realizations, true);
  add_cap(realizations);
  realizations->add_option("--format", format, "json or text (default json)");

  auto* align = app.add_subcommand(
      "align", "conformance bounds against a reference model");
  add_log_arg(align);
  align->add_option("model", model_path, "reference model (PNML)")->required();
  add_selector(align, false);
  add_cap(align);
  align->add_option("--mode", mode, "exhaustive or optimized")
      ->check(CLI::IsMember({"exhaustive", "optimized"}));
  align->add_option("--max-markings", max_markings,
                    "alignment state space guard");
  align->add_option("--jobs", jobs, "worker threads (whole-log mode)");

  auto* udfg = app.add_subcommand("udfg", "uncertain directly-follows graph");
  add_log_arg(udfg);
  add_cap(udfg);
  udfg->add_option("--act-threshold", act_threshold,
                   "minimum kept activity count");
  udfg->add_option("--edge-threshold", edge_threshold,
                   "minimum kept edge count");
  udfg->add_option("--semantics", semantics,
                   "bound used by the filter: min or max")
      ->check(CLI::IsMember({"min", "max"}));
  udfg->add_option("--format", format, "json or dot (default json)");
  udfg->add_option("--jobs", jobs, "worker threads");

  auto* simulate =
      app.add_subcommand("simulate", "inject uncertainty into a log");
  add_log_arg(simulate);
  simulate->add_option("--seed", spec.seed, "RNG seed");
  simulate->add_option("--p-activity", spec.p_activity,
                       "probability of widening the label set");
  simulate->add_option("--extra-labels", spec.extra_labels,
                       "labels added when widening");
  simulate->add_option("--dictionary", dictionary_csv,
                       "comma-separated label dictionary");
  simulate->add_option("--p-timestamp", spec.p_timestamp,
                       "probability of widening the timestamp");
  simulate->add_option("--half-width-ms", spec.half_width_ms,
                       "maximum widening per interval side");
  simulate->add_option("--p-indeterminate", spec.p_indeterminate,
                       "probability of marking an event indeterminate");

  auto* gantt = app.add_subcommand("gantt", "interval rows of one trace");
  add_log_arg(gantt);
  add_selector(gantt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (!cap_given) cap = default_cap();
    const upm::XesParseMode parse_mode =
        lenient ? upm::XesParseMode::lenient : upm::XesParseMode::strict;
    const upm::UncertainLog log =
        upm::parse_xes(read_file(log_path), parse_mode);
    const TraceSelector selector{case_id, index};

    if (*stats) {
      write_output(output, dump(upm::stats_json(upm::log_statistics(log))));
    } else if (*variants) {
      write_output(output, dump(upm::variants_json(upm::group_variants(log))));
    } else if (*graph) {
      const upm::BehaviorGraph g =
          upm::build_behavior_graph(selector.pick(log));
      if (format == "dot") {
        write_output(output, upm::to_dot(g));
      } else {
        write_output(output, dump(upm::graph_json(g)));
      }
    } else if (*net) {
      const upm::BehaviorNet bn = upm::build_behavior_net(selector.pick(log));
      if (format == "dot") {
        write_output(output, upm::to_dot(bn));
      } else {
        write_output(output, upm::write_pnml(bn.net));
      }
    } else if (*realizations) {
      const std::vector<upm::Sequence> seqs =
          upm::enumerate_realizations(selector.pick(log), cap);
      if (format == "text") {
        std::string text;
        for (const upm::Sequence& s : seqs) {
          for (std::size_t i = 0; i < s.size(); ++i) {
            if (i) text += ' ';
            text += s[i];
          }
          text += '\n';
        }
        write_output(output, text);
      } else {
        write_output(output, dump(upm::realizations_json(seqs)));
      }
    } else if (*align) {
      const upm::PetriNet model = upm::parse_pnml(read_file(model_path));
      upm::AlignOptions opts;
      opts.max_markings = max_markings;
      if (!case_id.empty() || index >= 0) {
        const upm::UncertainTrace& trace = selector.pick(log);
        if (mode == "optimized") {
          write_output(output, dump(upm::bounds_json(
                                   upm::bounds_optimized(trace, model, opts))));
        } else {
          write_output(output,
                       dump(upm::bounds_json(
                           upm::bounds_exhaustive(trace, model, cap, opts))));
        }
      } else {
        const upm::BoundsMode bounds_mode = mode == "optimized"
                                                ? upm::BoundsMode::optimized
                                                : upm::BoundsMode::exhaustive;
        write_output(output,
                     dump(upm::bounds_report_json(upm::bounds_log(
                         log, model, bounds_mode, cap, opts, jobs))));
      }
    } else if (*udfg) {
      upm::UdfgResult result = upm::discover_udfg(log, cap, jobs);
      const upm::BoundSemantics sem = semantics == "min"
                                          ? upm::BoundSemantics::min
                                          : upm::BoundSemantics::max;
      result.udfg =
          upm::filter_udfg(result.udfg, act_threshold, edge_threshold, sem);
      if (format == "dot") {
        write_output(output, upm::to_dot(result.udfg));
      } else {
        write_output(output, dump(upm::udfg_json(result)));
      }
    } else if (*simulate) {
      if (!dictionary_csv.empty()) {
        std::vector<std::string> dict;
        std::istringstream ss(dictionary_csv);
        std::string item;
        while (std::getline(ss, item, ',')) {
          if (!item.empty()) dict.push_back(item);
        }
        spec.dictionary = std::move(dict);
      }
      write_output(output, upm::write_xes(upm::inject_uncertainty(log, spec)));
    } else if (*gantt) {
      write_output(output, dump(upm::gantt_json(selector.pick(log))));
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const upm::Error& e) {
    const upm::Json err{{"error", std::string(upm::to_string(e.code()))},
                        {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 0;
}
