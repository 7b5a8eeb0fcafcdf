#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dynlab/point_set.hpp"
#include "dynlab/rational.hpp"

namespace dynlab {

/// A finite metric space given by labeled points and a dense, exact distance
/// table. Immutable after construction; every operation in the library is a
/// pure function over it.
struct FiniteMetricSpace {
  std::vector<std::string> labels;
  std::vector<Rat> dist;  // row-major size() x size() table

  int size() const { return static_cast<int>(labels.size()); }

  const Rat& at(int i, int j) const { return dist[static_cast<size_t>(i) * labels.size() + j]; }
  Rat& at(int i, int j) { return dist[static_cast<size_t>(i) * labels.size() + j]; }

  std::optional<int> index_of(std::string_view label) const;

  /// Index lookup that throws std::invalid_argument on unknown labels.
  int require_index(std::string_view label) const;

  Rat diameter() const;

  /// Smallest positive entry of the table; throws on single-point spaces.
  Rat min_positive_distance() const;
};

/// Default cap on point counts; dense tables above this are rejected by
/// builders and the parser (overridable via DYNLAB_MAX_POINTS).
int max_point_budget();

struct MetricViolation {
  enum class Kind { Shape, Diagonal, IndiscerniblePair, Asymmetry, Negative, Triangle };
  Kind kind;
  int i = -1;
  int j = -1;
  int k = -1;
  std::string message;
};

/// Checks all metric axioms, triangle inequality over every triple included.
/// Violations are reported as a value, never thrown.
std::optional<MetricViolation> validate_metric(const FiniteMetricSpace& space);

/// All distinct distance values, ascending, 0 included. This is the candidate
/// grid for every epsilon/delta search in the toolkit.
std::vector<Rat> distance_spectrum(const FiniteMetricSpace& space);

/// Open ball {y : d(center, y) < radius}. Strict inequality; radius 0 gives
/// the empty set. Throws on negative radius.
PointSet ball(const FiniteMetricSpace& space, int center, const Rat& radius);

/// Classes of the transitive closure of d(x, y) < h (strict). Distinct
/// classes are pairwise >= h apart; a grid with spacing g is already frozen
/// into singletons at h = g. Blocks are sorted by least member.
std::vector<std::vector<int>> h_components(const FiniteMetricSpace& space, const Rat& h);

/// Partition into blocks of diameter < epsilon with positive mutual
/// separation, the finite stand-in for a disjoint clopen cover.
struct ClopenCover {
  std::vector<std::vector<int>> blocks;
  /// Minimum cross-block distance; nullopt when the cover is a single block
  /// (no cross pairs exist, conceptually infinite separation).
  std::optional<Rat> separation;
  Rat max_diameter;
};

/// Scans every h in the distance spectrum and returns the h-component cover
/// maximizing separation subject to max_diameter < epsilon; nullopt when no
/// candidate h keeps all diameters below epsilon. Ties prefer smaller
/// max_diameter, then smaller h.
std::optional<ClopenCover> clopen_cover(const FiniteMetricSpace& space, const Rat& epsilon);

}  // namespace dynlab
