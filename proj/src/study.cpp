#include "dynlab/study.hpp"

#include <sstream>

#include "dynlab/builders.hpp"
#include "dynlab/metric_space.hpp"

namespace dynlab {

std::optional<StudyFamily> study_family_from_name(const std::string& name) {
  if (name == "cantor_identity") return StudyFamily::CantorIdentity;
  if (name == "cantor_t") return StudyFamily::CantorT;
  if (name == "interval_identity") return StudyFamily::IntervalIdentity;
  if (name == "shift_to_limit") return StudyFamily::ShiftToLimit;
  if (name == "cone") return StudyFamily::Cone;
  return std::nullopt;
}

std::string study_family_name(StudyFamily family) {
  switch (family) {
    case StudyFamily::CantorIdentity: return "cantor_identity";
    case StudyFamily::CantorT: return "cantor_t";
    case StudyFamily::IntervalIdentity: return "interval_identity";
    case StudyFamily::ShiftToLimit: return "shift_to_limit";
    case StudyFamily::Cone: return "cone";
  }
  return "?";
}

System build_study_system(StudyFamily family, int level) {
  switch (family) {
    case StudyFamily::CantorIdentity: {
      System cantor = build_cantor(level);
      cantor.map = identity_map(cantor.size());
      return cantor;
    }
    case StudyFamily::CantorT:
      return build_cantor(level);
    case StudyFamily::IntervalIdentity:
      return build_interval_grid(level);
    case StudyFamily::ShiftToLimit:
      return build_shift_to_limit(level);
    case StudyFamily::Cone:
      return build_cone(build_cantor(1), level);
  }
  throw std::invalid_argument("unknown study family");
}

namespace {

// The candidate just above a value, if any: where shadowing first fails.
std::optional<Rat> next_candidate_above(const System& f, const Rat& value) {
  for (const Rat& c : delta_candidates(f)) {
    if (c > value) return c;
  }
  return std::nullopt;
}

}  // namespace

StudyTable run_refinement_study(StudyFamily family, const std::vector<int>& levels,
                                const std::vector<Rat>& epsilons, const Budget& budget) {
  if (levels.empty()) throw std::invalid_argument("run_refinement_study: no levels");
  StudyTable table;
  for (int level : levels) {
    const System system = build_study_system(family, level);
    for (const Rat& epsilon : epsilons) {
      if (epsilon <= 0) throw std::invalid_argument("run_refinement_study: epsilon must be positive");
      StudyRow row{study_family_name(family), level, epsilon, std::nullopt, ""};
      try {
        const MaxDelta result = max_delta(system, epsilon, budget);
        row.result = result;
        std::ostringstream notes;
        if (result.unbounded) {
          notes << "every delta works";
        } else if (!result.attained) {
          notes << "no positive candidate works";
        } else {
          notes << "attained";
          if (const auto above = next_candidate_above(system, result.value)) {
            notes << "; eventual@" << rat_to_string(*above) << "=";
            try {
              notes << (decide_eventual_shadowing(system, epsilon, *above, budget).yes ? "yes"
                                                                                       : "no");
            } catch (const BudgetExceeded&) {
              notes << "budget-exceeded";  // the delta* cell itself stands
            }
          }
        }
        row.notes = notes.str();
      } catch (const BudgetExceeded&) {
        row.result = std::nullopt;
        row.notes = "budget-exceeded";
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

std::vector<Rat> default_epsilon_grid(const FiniteMetricSpace& space, size_t max_values) {
  std::vector<Rat> positive;
  for (const Rat& d : distance_spectrum(space)) {
    if (d > 0) positive.push_back(d);
  }
  if (positive.size() <= max_values || max_values < 2) return positive;
  std::vector<Rat> grid;
  grid.reserve(max_values);
  for (size_t i = 0; i < max_values; ++i) {
    const size_t index = i * (positive.size() - 1) / (max_values - 1);
    if (grid.empty() || positive[index] != grid.back()) grid.push_back(positive[index]);
  }
  return grid;
}

std::string study_to_csv(const StudyTable& table) {
  std::ostringstream out;
  out << "family,level,epsilon,max_delta,attained,unbounded,notes\n";
  for (const StudyRow& row : table.rows) {
    out << row.family << "," << row.level << "," << rat_to_string(row.epsilon) << ",";
    if (row.result) {
      out << rat_to_string(row.result->value) << "," << (row.result->attained ? "true" : "false")
          << "," << (row.result->unbounded ? "true" : "false");
    } else {
      out << ",,";
    }
    out << ",\"" << row.notes << "\"\n";
  }
  return out.str();
}

}  // namespace dynlab
