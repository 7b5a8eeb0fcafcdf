#include <doctest.h>

#include "dynlab/builders.hpp"
#include "dynlab/dot_export.hpp"
#include "dynlab/recurrence.hpp"
#include "dynlab/study.hpp"
#include "dynlab/system_io.hpp"

using namespace dynlab;

TEST_CASE("rational parsing and printing") {
  CHECK(*parse_rational("1/3") == Rat(1, 3));
  CHECK(*parse_rational("-2/6") == Rat(-1, 3));
  CHECK(*parse_rational("7") == Rat(7));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("1/-3"));
  CHECK(!parse_rational("a/b"));
  CHECK(!parse_rational(""));
  CHECK(!parse_rational("1/"));
  CHECK(rat_to_string(Rat(2, 6)) == "1/3");
  CHECK(rat_to_string(Rat(-5)) == "-5");
  CHECK(rat_to_string(Rat(0)) == "0");
}

TEST_CASE("parse_system_file: a two-point permutation") {
  const std::string text =
      "format 1\n"
      "metric line\n"
      "point a 0\n"
      "point b 1\n"
      "map a b\n"
      "map b a\n";
  const auto parsed = parse_system_file(text);
  CHECK(parsed.system.size() == 2);
  CHECK(parsed.system.space.at(0, 1) == Rat(1));
  CHECK(parsed.system.step(0) == 1);
  CHECK(parsed.system.step(1) == 0);
  CHECK(is_permutation(parsed.system.map));
}

TEST_CASE("parse_system_file: line-numbered diagnostics") {
  auto expect_error = [](const std::string& text, int line, const char* needle) {
    try {
      parse_system_file(text);
      FAIL_CHECK("expected ParseError for: " << needle);
    } catch (const ParseError& error) {
      CHECK(error.line == line);
      CHECK(std::string(error.what()).find(needle) != std::string::npos);
    }
  };

  expect_error("metric line\npoint a 1/0\n", 2, "invalid rational");
  expect_error("metric line\npoint a 0\npoint a 1\nmap a a\n", 3, "duplicate label");
  expect_error("metric line\npoint a 0\npoint b 1\nmap a b\n", 0, "not total");
  expect_error("metric line\npoint a 0\npoint b 1\nmap a b\nmap b c\n", 0, "unknown label");
  expect_error("point a 0\nmap a a\n", 2, "requires a 'metric");
  expect_error("metric sphere\n", 1, "unknown metric");
  expect_error("bogus 1 2\n", 1, "unknown directive");
  expect_error("", 0, "no points");
  // Metric axioms checked at parse time: forced triangle violation.
  expect_error(
      "dist a b 1\ndist b c 1\ndist a c 3\nmap a a\nmap b b\nmap c c\n", 0, "triangle");
  expect_error("dist a b 0\nmap a a\nmap b b\n", 0, "distance 0");
  expect_error("dist a b 1\ndist b a 1\nmap a a\nmap b b\n", 0, "duplicate dist");
  expect_error("dist a b 1\ndist a c 1\nmap a a\nmap b b\nmap c c\n", 0, "missing dist");
}

TEST_CASE("round trip: coordinate and explicit forms survive serialize/parse") {
  const std::vector<std::pair<System, bool>> line_systems = {
      {build_cantor(2), false},
      {build_interval_grid(5), false},
      {build_shift_to_limit(3), false},
      {build_circle_grid(6, Rat(1, 3)), true},
  };
  for (const auto& [system, circle] : line_systems) {
    const SystemDocument doc = document_from_line_system(system, circle);
    const auto reparsed = parse_system_file(serialize_system(doc));
    CHECK(reparsed.doc.metric == doc.metric);
    CHECK(reparsed.doc.points == doc.points);
    CHECK(reparsed.doc.map_entries == doc.map_entries);
    CHECK(reparsed.system.space.labels == system.space.labels);
    CHECK(reparsed.system.space.dist == system.space.dist);
    CHECK(reparsed.system.map.image == system.map.image);
  }

  for (const System& system : {build_cone(build_cantor(1), 2), random_system(6, 5, true)}) {
    const SystemDocument doc = document_from_system(system);
    const auto reparsed = parse_system_file(serialize_system(doc));
    CHECK(reparsed.doc.dists == doc.dists);
    CHECK(reparsed.doc.map_entries == doc.map_entries);
    CHECK(reparsed.system.space.labels == system.space.labels);
    CHECK(reparsed.system.space.dist == system.space.dist);
    CHECK(reparsed.system.map.image == system.map.image);
  }
}

TEST_CASE("circle coordinates that collide mod 1 are a metric violation") {
  const std::string text = "metric circle\npoint a 0\npoint b 1\nmap a a\nmap b b\n";
  CHECK_THROWS_AS(parse_system_file(text), ParseError);
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text =
      "# a system\n"
      "\n"
      "metric line   # inline comment\n"
      "point a 0\n"
      "point b 1/2\n"
      "map a b\n"
      "map b a\n";
  CHECK(parse_system_file(text).system.size() == 2);
}

TEST_CASE("export_dot: function edges only at tight delta") {
  const System e1 = build_cantor(1);
  const auto graph = build_step_graph(e1, Rat(1, 3));
  const std::string dot = export_dot(e1, graph);
  CHECK(dot.find("\"1/3\" -> \"1\";") != std::string::npos);
  CHECK(dot.find("\"2/3\" -> \"0\";") != std::string::npos);
  CHECK(dot.find("\"1\" -> \"0\";") != std::string::npos);
  CHECK(dot.find("\"0\" -> \"0\";") != std::string::npos);
  // Exactly the four function edges.
  size_t arrows = 0;
  for (size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 1)) {
    ++arrows;
  }
  CHECK(arrows == 4);
  // Deterministic output.
  CHECK(export_dot(e1, graph) == dot);
}

TEST_CASE("export_dot renders chain classes as clusters") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  const auto graph = build_step_graph(rot, Rat(1, 8));
  const auto classes = chain_classes(rot, Rat(1, 8));
  const std::string dot = export_dot(rot, graph, classes);
  CHECK(dot.find("subgraph cluster_0") != std::string::npos);
  CHECK(dot.find("minimal class") != std::string::npos);
  CHECK(dot.find("subgraph cluster_1") == std::string::npos);  // single class
}

TEST_CASE("refinement studies: frozen delta-star columns") {
  const auto cantor_t = run_refinement_study(StudyFamily::CantorT, {1, 2, 3}, {Rat(1, 2)});
  REQUIRE(cantor_t.rows.size() == 3);
  CHECK(cantor_t.rows[0].result->value == Rat(1, 3));
  CHECK(cantor_t.rows[1].result->value == Rat(1, 9));
  CHECK(cantor_t.rows[2].result->value == Rat(1, 27));

  const auto cantor_id = run_refinement_study(StudyFamily::CantorIdentity, {1, 2, 3}, {Rat(1, 2)});
  for (const auto& row : cantor_id.rows) {
    REQUIRE(row.result);
    CHECK(row.result->value == Rat(1, 3));
  }

  const auto interval = run_refinement_study(StudyFamily::IntervalIdentity, {4, 8}, {Rat(1, 2)});
  CHECK(interval.rows[0].result->value == Rat(1, 4));
  CHECK(interval.rows[1].result->value == Rat(1, 8));
}

TEST_CASE("study tables are bit-for-bit reproducible and CSV-stable") {
  const auto once = run_refinement_study(StudyFamily::ShiftToLimit, {2, 3}, {Rat(1, 4)});
  const auto twice = run_refinement_study(StudyFamily::ShiftToLimit, {2, 3}, {Rat(1, 4)});
  CHECK(study_to_csv(once) == study_to_csv(twice));
  CHECK(once.rows[0].result->value == Rat(1, 4));
  CHECK(once.rows[1].result->value == Rat(1, 8));

  // Budget-starved rows are marked but the run continues.
  Budget tiny;
  tiny.max_states = 3;
  const auto starved = run_refinement_study(StudyFamily::CantorT, {2}, {Rat(1, 2)}, tiny);
  REQUIRE(starved.rows.size() == 1);
  CHECK(!starved.rows[0].result);
  CHECK(starved.rows[0].notes == "budget-exceeded");
}

TEST_CASE("every study cell re-derives by invoking the named operation") {
  const auto table = run_refinement_study(StudyFamily::CantorT, {1, 2}, {Rat(1, 2), Rat(1, 3)});
  for (const auto& row : table.rows) {
    REQUIRE(row.result);
    const System system = build_study_system(StudyFamily::CantorT, row.level);
    const auto again = max_delta(system, row.epsilon);
    CHECK(again.value == row.result->value);
    CHECK(again.attained == row.result->attained);
  }
}

TEST_CASE("default_epsilon_grid decimates the spectrum with both ends kept") {
  const System cone = build_cone(build_cantor(1), 3);
  const auto grid = default_epsilon_grid(cone.space, 8);
  CHECK(grid.size() <= 8);
  CHECK(grid.front() == cone.space.min_positive_distance());
  CHECK(grid.back() == cone.space.diameter());
  for (size_t i = 1; i < grid.size(); ++i) CHECK(grid[i - 1] < grid[i]);
}
