#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "upm/conformance.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace upm;

namespace {

Sequence log_projection(const Alignment& a) {
  Sequence out;
  for (const AlignmentStep& s : a.steps) {
    if (s.kind != MoveKind::model && !s.silent) out.push_back(s.label);
  }
  return out;
}

// Replays the model half of the alignment and checks it reaches the final
// marking.
void check_model_projection(const Alignment& a, const PetriNet& model) {
  Marking m = model.initial_marking;
  for (const AlignmentStep& s : a.steps) {
    if (s.kind == MoveKind::log) continue;
    REQUIRE_FALSE(s.model_transition.empty());
    bool fired = false;
    for (const Transition& t : model.transitions) {
      if (t.id != s.model_transition) continue;
      REQUIRE(is_enabled(m, t));
      m = fire(m, t);
      fired = true;
      break;
    }
    REQUIRE(fired);
  }
  CHECK(m == model.final_marking);
}

std::int64_t unit_cost(const Alignment& a) {
  std::int64_t c = 0;
  for (const AlignmentStep& s : a.steps) {
    if (s.kind != MoveKind::sync && !s.silent) ++c;
  }
  return c;
}

bool same_steps(const Alignment& a, const Alignment& b) {
  if (a.cost != b.cost || a.steps.size() != b.steps.size()) return false;
  for (std::size_t i = 0; i < a.steps.size(); ++i) {
    if (a.steps[i].kind != b.steps[i].kind ||
        a.steps[i].label != b.steps[i].label ||
        a.steps[i].model_transition != b.steps[i].model_transition ||
        a.steps[i].silent != b.steps[i].silent) {
      return false;
    }
  }
  return true;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::io_error;
}

}  // namespace

TEST_CASE("a fitting word aligns at cost zero") {
  const Alignment a = align({"NightSweats", "PrTP", "Splenomeg", "Adm"},
                            fixtures::running_example_model());
  CHECK(a.cost == 0);
  REQUIRE(a.steps.size() == 4);
  for (const AlignmentStep& s : a.steps) CHECK(s.kind == MoveKind::sync);
}

TEST_CASE("alignment of a deviating word") {
  const PetriNet model = fixtures::running_example_model();
  const Sequence word{"Splenomeg", "SecTP", "Adm"};
  const Alignment a = align(word, model);
  CHECK(a.cost == 3);
  CHECK(log_projection(a) == word);
  check_model_projection(a, model);
  CHECK(unit_cost(a) == a.cost);
}

TEST_CASE("the empty word pays for every mandatory task") {
  const Alignment a = align({}, fixtures::running_example_model());
  CHECK(a.cost == 4);
  for (const AlignmentStep& s : a.steps) CHECK(s.kind == MoveKind::model);
}

TEST_CASE("alignment is deterministic") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 20; ++round) {
    const PetriNet model = generators::random_model(rng);
    Sequence word;
    for (std::uint64_t i = generators::below(rng, 6); i > 0; --i) {
      word.push_back(generators::label_of(
          static_cast<int>(generators::below(rng, 4))));
    }
    CHECK(same_steps(align(word, model), align(word, model)));
  }
}

TEST_CASE("alignment cost matches the reference search") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 100; ++round) {
    const PetriNet model = generators::random_model(rng);
    Sequence word;
    for (std::uint64_t i = generators::below(rng, 6); i > 0; --i) {
      word.push_back(generators::label_of(
          static_cast<int>(generators::below(rng, 4))));
    }
    CAPTURE(round, word);
    const auto expected = oracles::align_cost(word, model);
    REQUIRE(expected.has_value());
    const Alignment a = align(word, model);
    CHECK(a.cost == *expected);
    CHECK(log_projection(a) == word);
    check_model_projection(a, model);
    CHECK(unit_cost(a) == a.cost);
  }
}

TEST_CASE("exhaustive bounds for the running example") {
  const UncertainTrace trace = fixtures::running_example_trace();
  const PetriNet model = fixtures::running_example_model();
  const ConformanceBounds b = bounds_exhaustive(trace, model);
  CHECK(b.lower == 0);
  CHECK(b.upper == 4);
  CHECK(b.best.cost == b.lower);
  CHECK(b.worst.cost == b.upper);
  CHECK(align(b.best_realization, model).cost == b.lower);
  CHECK(align(b.worst_realization, model).cost == b.upper);
  const auto oracle = oracles::bounds(trace, model);
  REQUIRE(oracle.has_value());
  CHECK(b.lower == oracle->lower);
  CHECK(b.upper == oracle->upper);
}

TEST_CASE("optimized lower bound equals the exhaustive one") {
  std::mt19937_64 rng(43);
  generators::TraceOptions opt;
  opt.max_events = 5;
  for (int round = 0; round < 100; ++round) {
    const UncertainTrace trace = generators::random_trace(rng, "c", opt);
    const PetriNet model = generators::random_model(rng);
    CAPTURE(round);
    const ConformanceBounds ex = bounds_exhaustive(trace, model);
    const OptimizedBounds op = bounds_optimized(trace, model);
    CHECK(op.lower == ex.lower);
    CHECK(op.best.cost == op.lower);
    CHECK(align(op.best_realization, model).cost == op.lower);
    const std::vector<Sequence> seqs = enumerate_realizations(trace);
    CHECK(std::find(seqs.begin(), seqs.end(), op.best_realization) !=
          seqs.end());
    const auto oracle = oracles::bounds(trace, model);
    REQUIRE(oracle.has_value());
    CHECK(ex.lower == oracle->lower);
    CHECK(ex.upper == oracle->upper);
  }
}

namespace {

UncertainTrace wide_trace(int n) {
  UncertainTrace t;
  t.case_id = "wide";
  for (int i = 0; i < n; ++i) {
    UncertainEvent e;
    e.id = "e" + std::to_string(i + 1);
    e.labels = {"A", "B"};
    e.time = TimeInterval(fixtures::july(1) + i, fixtures::july(1) + i);
    e.indeterminate = true;
    t.events.push_back(std::move(e));
  }
  return t;
}

}  // namespace

TEST_CASE("whole-log reports carry per-trace statuses") {
  UncertainLog log;
  log.traces.push_back(fixtures::running_example_trace());
  log.traces.push_back(wide_trace(8));
  const PetriNet model = fixtures::running_example_model();

  SECTION("exhaustive mode") {
    const auto reports = bounds_log(log, model, BoundsMode::exhaustive, 50, {}, 2);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].case_id == "ID192");
    CHECK(reports[0].status == "ok");
    CHECK(reports[0].lower == 0);
    CHECK(reports[0].upper == 4);
    CHECK(reports[1].case_id == "wide");
    CHECK(reports[1].status == "cap_exceeded");
    CHECK_FALSE(reports[1].lower.has_value());
    CHECK_FALSE(reports[1].upper.has_value());
  }

  SECTION("optimized mode keeps the lower bound when the cap bites") {
    const auto reports = bounds_log(log, model, BoundsMode::optimized, 50);
    REQUIRE(reports.size() == 2);
    CHECK(reports[0].status == "ok");
    CHECK(reports[0].lower == 0);
    CHECK(reports[0].upper == 4);
    CHECK(reports[1].status == "upper_cap_exceeded");
    REQUIRE(reports[1].lower.has_value());
    CHECK(*reports[1].lower == 4);  // four mandatory model tasks, no sync
    CHECK_FALSE(reports[1].upper.has_value());
  }

  SECTION("unreachable final marking") {
    PetriNet dead;
    dead.initial_marking.add(dead.add_place("p0"), 1);
    dead.final_marking.add(dead.add_place("p1"), 1);
    const auto reports = bounds_log(log, dead, BoundsMode::exhaustive, 50);
    CHECK(reports[0].status == "unreachable");
    CHECK(reports[1].status == "cap_exceeded");
  }

  SECTION("marking budget") {
    AlignOptions opts;
    opts.max_markings = 1;
    const auto reports =
        bounds_log(log, model, BoundsMode::exhaustive, 50, opts);
    CHECK(reports[0].status == "state_space_exceeded");
  }
}

TEST_CASE("alignment error codes") {
  PetriNet dead;
  dead.initial_marking.add(dead.add_place("p0"), 1);
  dead.final_marking.add(dead.add_place("p1"), 1);
  CHECK(code_of([&] { align({"A"}, dead); }) == ErrorCode::unreachable);
  AlignOptions tight;
  tight.max_markings = 1;
  CHECK(code_of([&] {
          align({"A"}, fixtures::running_example_model(), tight);
        }) == ErrorCode::state_space_exceeded);
}
