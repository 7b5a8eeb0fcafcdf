// Command-line front end for the exact shadowing toolkit: validates system
// files, runs the deciders, exports graphs, and drives refinement studies.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "dynlab/builders.hpp"
#include "dynlab/dot_export.hpp"
#include "dynlab/json_report.hpp"
#include "dynlab/metric_space.hpp"
#include "dynlab/recurrence.hpp"
#include "dynlab/shadowing.hpp"
#include "dynlab/study.hpp"
#include "dynlab/system_io.hpp"

namespace {

constexpr int kExitYes = 0;
constexpr int kExitNoWitness = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

using dynlab::Json;
using dynlab::Rat;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long micros() const {
    return std::chrono::duration_cast<std::chrono::microseconds>(std::chrono::steady_clock::now() -
                                                                 start)
        .count();
  }
};

Rat parse_rat_option(const std::string& text, const std::string& name) {
  if (auto value = dynlab::parse_rational(text)) return *value;
  throw CLI::ValidationError(name, "expected a rational like 1/3");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

std::vector<int> parse_level_range(const std::string& text) {
  const auto dots = text.find("..");
  std::vector<int> levels;
  if (dots == std::string::npos) {
    levels.push_back(std::stoi(text));
    return levels;
  }
  const int lo = std::stoi(text.substr(0, dots));
  const int hi = std::stoi(text.substr(dots + 2));
  if (hi < lo) throw std::runtime_error("empty level range " + text);
  for (int l = lo; l <= hi; ++l) levels.push_back(l);
  return levels;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynlab: exact shadowing, recurrence and rigidity analysis on finite metric systems"};
  app.require_subcommand(1);
  const dynlab::Budget budget = dynlab::Budget::from_env();

  std::string file, epsilon_text, delta_text, out_path, dot_path, csv_path, levels_text,
      rotation_text = "1/4";
  bool eventual = false, cg = false;
  long long horizon = 0;
  int level = 0, grid_n = 0, cone_k = 0;

  auto* validate = app.add_subcommand("validate", "parse a system file and check all axioms");
  validate->add_option("file", file)->required();

  auto* check = app.add_subcommand("check", "decide (epsilon, delta)-shadowing");
  check->add_option("file", file)->required();
  check->add_option("--epsilon", epsilon_text)->required();
  check->add_option("--delta", delta_text)->required();
  check->add_flag("--eventual", eventual, "decide eventual shadowing instead");
  check->add_flag("--cg", cg, "decide continuously generated shadowing instead");

  auto* maxdelta = app.add_subcommand("max-delta", "largest workable delta at a given epsilon");
  maxdelta->add_option("file", file)->required();
  maxdelta->add_option("--epsilon", epsilon_text)->required();

  auto* witness = app.add_subcommand("witness", "produce an unshadowable pseudo-orbit, if any");
  witness->add_option("file", file)->required();
  witness->add_option("--epsilon", epsilon_text)->required();
  witness->add_option("--delta", delta_text)->required();

  auto* chains = app.add_subcommand("chains", "chain classes of the delta-step graph");
  chains->add_option("file", file)->required();
  chains->add_option("--delta", delta_text)->required();
  chains->add_option("--dot", dot_path, "write the clustered step graph as DOT");

  auto* classify = app.add_subcommand("classify", "structural report for a system");
  classify->add_option("file", file)->required();
  classify->add_option("--horizon", horizon, "rigidity horizon (default: tail + cycle length)");

  auto* build = app.add_subcommand("build", "write an example system to a file");
  std::string family;
  build->add_option("family", family, "interval_grid|circle_grid|cantor|shift_to_limit|cone")
      ->required();
  build->add_option("--level", level, "cantor level M");
  build->add_option("--n", grid_n, "grid resolution");
  build->add_option("--k", cone_k, "shift/cone height count");
  build->add_option("--rotation", rotation_text, "circle rotation (default 1/4)");
  build->add_option("-o,--output", out_path)->required();

  auto* study = app.add_subcommand("study", "max_delta across refinement levels");
  std::string study_family;
  study->add_option("family", study_family,
                    "cantor_identity|cantor_t|interval_identity|shift_to_limit|cone")
      ->required();
  study->add_option("--levels", levels_text, "a..b or a single level")->required();
  study->add_option("--epsilon", epsilon_text)->required();
  study->add_option("--csv", csv_path, "also write the table as CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    Timer timer;
    if (*validate) {
      try {
        const auto parsed = dynlab::parse_system_file(read_file(file));
        emit(dynlab::make_report(
            "validate", Json{{"file", file}},
            Json{{"verdict", "ok"}, {"points", parsed.system.size()}}, timer.micros()));
        return kExitYes;
      } catch (const dynlab::ParseError& error) {
        emit(dynlab::make_report("validate", Json{{"file", file}},
                                 Json{{"verdict", "invalid"}, {"error", error.what()}},
                                 timer.micros()));
        return kExitInputError;
      }
    }

    if (*check) {
      const auto parsed = dynlab::parse_system_file(read_file(file));
      const Rat eps = parse_rat_option(epsilon_text, "--epsilon");
      const Rat delta = parse_rat_option(delta_text, "--delta");
      Json inputs{{"file", file},
                  {"epsilon", dynlab::rat_to_string(eps)},
                  {"delta", dynlab::rat_to_string(delta)}};
      if (eventual && cg) throw CLI::ValidationError("check", "--eventual and --cg are exclusive");
      if (eventual) {
        const auto verdict = dynlab::decide_eventual_shadowing(parsed.system, eps, delta, budget);
        emit(dynlab::make_report("eventual-shadowing", inputs,
                                 verdict_to_json(parsed.system, verdict, eps, delta),
                                 timer.micros()));
        return verdict.yes ? kExitYes : kExitNoWitness;
      }
      if (cg) {
        const auto verdict = dynlab::decide_cg_shadowing(parsed.system, eps, delta, budget);
        emit(dynlab::make_report("cg-shadowing", inputs,
                                 verdict_to_json(parsed.system, verdict, eps, delta),
                                 timer.micros()));
        return verdict.yes ? kExitYes : kExitNoWitness;
      }
      const auto verdict = dynlab::decide_shadowing(parsed.system, eps, delta, budget);
      emit(dynlab::make_report("shadowing", inputs,
                               verdict_to_json(parsed.system, verdict),
                               timer.micros()));
      return verdict.yes ? kExitYes : kExitNoWitness;
    }

    if (*maxdelta) {
      const auto parsed = dynlab::parse_system_file(read_file(file));
      const Rat eps = parse_rat_option(epsilon_text, "--epsilon");
      const auto result = dynlab::max_delta(parsed.system, eps, budget);
      emit(dynlab::make_report(
          "max-delta", Json{{"file", file}, {"epsilon", dynlab::rat_to_string(eps)}},
          Json{{"verdict", Json{{"max_delta", dynlab::rat_to_string(result.value)},
                                {"attained", result.attained},
                                {"unbounded", result.unbounded}}}},
          timer.micros()));
      return kExitYes;
    }

    if (*witness) {
      const auto parsed = dynlab::parse_system_file(read_file(file));
      const Rat eps = parse_rat_option(epsilon_text, "--epsilon");
      const Rat delta = parse_rat_option(delta_text, "--delta");
      Json inputs{{"file", file},
                  {"epsilon", dynlab::rat_to_string(eps)},
                  {"delta", dynlab::rat_to_string(delta)}};
      const auto witness_po = dynlab::unshadowable_witness(parsed.system, eps, delta, budget);
      if (!witness_po) {
        emit(dynlab::make_report("witness", inputs, Json{{"verdict", "none (shadowing holds)"}},
                                 timer.micros()));
        return kExitYes;
      }
      emit(dynlab::make_report(
          "witness", inputs,
          Json{{"verdict", "unshadowable"}, {"witness", lasso_to_json(parsed.system, *witness_po)}},
          timer.micros()));
      return kExitNoWitness;
    }

    if (*chains) {
      const auto parsed = dynlab::parse_system_file(read_file(file));
      const Rat delta = parse_rat_option(delta_text, "--delta");
      const auto classes = dynlab::chain_classes(parsed.system, delta);
      Json rows = Json::array();
      for (const auto& cls : classes) {
        Json members = Json::array();
        for (int p : cls.members) members.push_back(parsed.system.space.labels[p]);
        rows.push_back(Json{{"members", members},
                            {"transitive", cls.transitive},
                            {"minimal", cls.minimal}});
      }
      if (!dot_path.empty()) {
        const auto graph = dynlab::build_step_graph(parsed.system, delta);
        write_file(dot_path, dynlab::export_dot(parsed.system, graph, classes));
      }
      emit(dynlab::make_report("chains",
                               Json{{"file", file}, {"delta", dynlab::rat_to_string(delta)}},
                               Json{{"verdict", Json{{"classes", rows}}}}, timer.micros()));
      return kExitYes;
    }

    if (*classify) {
      const auto parsed = dynlab::parse_system_file(read_file(file));
      const auto report = dynlab::classify_system(
          parsed.system, horizon > 0 ? std::optional<long long>(horizon) : std::nullopt);
      emit(dynlab::make_report("classify", Json{{"file", file}},
                               Json{{"verdict", classification_to_json(parsed.system, report)}},
                               timer.micros()));
      return kExitYes;
    }

    if (*build) {
      dynlab::SystemDocument doc;
      if (family == "interval_grid") {
        if (grid_n < 1) throw std::runtime_error("interval_grid needs --n");
        doc = dynlab::document_from_line_system(dynlab::build_interval_grid(grid_n), false);
      } else if (family == "circle_grid") {
        if (grid_n < 1) throw std::runtime_error("circle_grid needs --n");
        doc = dynlab::document_from_line_system(
            dynlab::build_circle_grid(grid_n, parse_rat_option(rotation_text, "--rotation")), true);
      } else if (family == "cantor") {
        if (level < 1) throw std::runtime_error("cantor needs --level");
        doc = dynlab::document_from_line_system(dynlab::build_cantor(level), false);
      } else if (family == "shift_to_limit") {
        if (cone_k < 1) throw std::runtime_error("shift_to_limit needs --k");
        doc = dynlab::document_from_line_system(dynlab::build_shift_to_limit(cone_k), false);
      } else if (family == "cone") {
        if (cone_k < 1) throw std::runtime_error("cone needs --k");
        doc = dynlab::document_from_system(dynlab::build_cone(dynlab::build_cantor(1), cone_k));
      } else {
        throw std::runtime_error("unknown family " + family);
      }
      write_file(out_path, dynlab::serialize_system(doc));
      emit(dynlab::make_report("build", Json{{"family", family}, {"output", out_path}},
                               Json{{"verdict", "ok"}}, timer.micros()));
      return kExitYes;
    }

    if (*study) {
      const auto fam = dynlab::study_family_from_name(study_family);
      if (!fam) throw std::runtime_error("unknown study family " + study_family);
      const auto levels = parse_level_range(levels_text);
      const Rat eps = parse_rat_option(epsilon_text, "--epsilon");
      const auto table = dynlab::run_refinement_study(*fam, levels, {eps}, budget);
      if (!csv_path.empty()) write_file(csv_path, dynlab::study_to_csv(table));
      emit(dynlab::make_report("study",
                               Json{{"family", study_family},
                                    {"levels", levels_text},
                                    {"epsilon", dynlab::rat_to_string(eps)}},
                               Json{{"verdict", study_to_json(table)}}, timer.micros()));
      const bool exceeded = std::any_of(table.rows.begin(), table.rows.end(),
                                        [](const auto& row) { return !row.result; });
      return exceeded ? kExitBudget : kExitYes;
    }
  } catch (const dynlab::BudgetExceeded& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitBudget;
  } catch (const dynlab::ParseError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInputError;
  } catch (const CLI::ValidationError& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
