#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynlab/rational.hpp"
#include "dynlab/shadowing.hpp"
#include "dynlab/system_map.hpp"

namespace dynlab {

/// Refinement families: one discretization level per table row.
enum class StudyFamily { CantorIdentity, CantorT, IntervalIdentity, ShiftToLimit, Cone };

std::optional<StudyFamily> study_family_from_name(const std::string& name);
std::string study_family_name(StudyFamily family);

/// Builds the system at a given level of a family. Cone levels are heights
/// over the fixed base (cantor(1), t).
System build_study_system(StudyFamily family, int level);

struct StudyRow {
  std::string family;
  int level;
  Rat epsilon;
  std::optional<MaxDelta> result;  // absent when the budget ran out
  std::string notes;
};

struct StudyTable {
  std::vector<StudyRow> rows;
};

/// One row per (level, epsilon) pair, exact max_delta plus notes. A row
/// whose exploration exceeds the budget is marked and the run continues.
/// Output is reproducible bit for bit under a fixed budget.
StudyTable run_refinement_study(StudyFamily family, const std::vector<int>& levels,
                                const std::vector<Rat>& epsilons, const Budget& budget = Budget{});

/// Decimated positive distance spectrum (at most max_values entries, ends
/// included): the default exploratory epsilon grid for a space.
std::vector<Rat> default_epsilon_grid(const FiniteMetricSpace& space, size_t max_values = 12);

std::string study_to_csv(const StudyTable& table);

}  // namespace dynlab
