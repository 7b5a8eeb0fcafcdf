#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynlab/point_set.hpp"
#include "dynlab/rational.hpp"
#include "dynlab/system_map.hpp"

namespace dynlab {

/// Points lying on f-cycles. On finite spaces these are exactly the
/// recurrent points, so a recurrent system is a permutation.
PointSet periodic_points(const SystemMap& f);

bool is_permutation(const SystemMap& f);

struct RecurrenceReport {
  bool is_recurrent_system;
  std::optional<BigInt> period;  // minimal n with f^n = id, permutations only
  std::vector<Rat> epsilons;     // positive distance spectrum
  /// return_times[e][x]: least n > 0 with d(f^n(x), x) < epsilons[e], found
  /// on the orbit lasso; nullopt when the orbit never returns that close.
  std::vector<std::vector<std::optional<long long>>> return_times;
};

RecurrenceReport recurrence_report(const System& f);

/// min over 1 <= n <= horizon of rho(f^n, id); zero exactly when f is
/// periodic with period at most the horizon.
Rat rigidity_defect(const System& f, long long horizon);

/// Least window length l such that every length-l window of the orbit of x
/// meets the open epsilon-ball at x; nullopt when the orbit tail never
/// returns within epsilon.
std::optional<long long> almost_periodic_bound(const System& f, int x, const Rat& epsilon);

/// Points reachable from p by a delta-step walk of length >= 1: the chain
/// accessible set at this delta.
PointSet chain_reach(const System& f, int p, const Rat& delta);

/// The all-delta intersection of chain reach sets. On a finite space the
/// step graph is the plain function graph once delta is at most the least
/// positive candidate, so the intersection is the forward orbit of p.
PointSet chain_accessible_core(const System& f, int p);

/// A chain transitive class at scale delta: an SCC of the step graph
/// carrying a closed walk.
struct ChainClass {
  std::vector<int> members;
  Rat delta;
  bool transitive;  // every ordered pair joined by a walk of length >= 1
  bool minimal;     // the class is exactly one f-cycle
};

std::vector<ChainClass> chain_classes(const System& f, const Rat& delta);

struct ChainClassSummary {
  Rat delta;
  size_t class_count;
  size_t minimal_count;
  size_t covered_points;  // points lying in some class
};

struct ClassificationReport {
  bool is_perm;
  std::optional<BigInt> period;
  long long horizon;
  Rat defect;  // rigidity defect at the horizon
  IterateProfile iterates;
  std::vector<ChainClassSummary> class_summary;  // one row per spectrum delta
  std::vector<std::string> theorem_notes;
};

/// Assembles the per-system dossier: permutation/period data, rigidity
/// defect, iterate semigroup, chain classes across the spectrum, and notes
/// on which structural predictions apply.
ClassificationReport classify_system(const System& f, std::optional<long long> horizon = {});

}  // namespace dynlab
