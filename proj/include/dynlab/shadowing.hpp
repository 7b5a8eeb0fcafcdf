#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dynlab/pseudo_orbit.hpp"
#include "dynlab/rational.hpp"
#include "dynlab/system_map.hpp"

namespace dynlab {

/// Work cap shared by the subset-construction deciders and the map
/// enumeration of the continuously-generated variant.
struct Budget {
  size_t max_states = 1'000'000;

  /// Reads DYNLAB_BUDGET when set.
  static Budget from_env();
};

struct BudgetExceeded : std::runtime_error {
  explicit BudgetExceeded(size_t limit)
      : std::runtime_error("work budget exceeded (" + std::to_string(limit) + ")"), limit(limit) {}
  size_t limit;
};

/// One step of the viable-set recursion: the pseudo-orbit point and the set
/// of surviving shadower positions after intersecting with its epsilon-ball.
struct ViableStep {
  int point;
  PointSet viable;
  bool restarted = false;
};

/// The run of the viable-set recursion along a lasso unrolling, up to the
/// first repetition of a (cycle position, viable set) state. In restart mode
/// an emptied set is reseeded from the current ball and the step marked.
struct ViableTrace {
  std::vector<ViableStep> steps;
  std::vector<size_t> restart_marks;
  /// Index into steps where the repeated state first occurred, once detected.
  std::optional<size_t> loop_start;
};

ViableTrace viable_trace(const System& f, const LassoPseudoOrbit& po, const Rat& epsilon,
                         bool restart_on_empty);

struct ShadowResult {
  std::optional<int> shadower;        // concrete z, present on success
  std::optional<size_t> failure_index;  // unrolled index where the set empties

  bool shadowed() const { return shadower.has_value(); }
};

/// Decides whether some single orbit epsilon-shadows the full lasso
/// unrolling. On success the witness z is recovered by back-tracing
/// preimages through the viable sets and re-checked over the traced prefix.
ShadowResult shadowability_of(const System& f, const LassoPseudoOrbit& po, const Rat& epsilon);

struct ShadowingVerdict {
  bool yes;
  Rat epsilon;
  Rat delta;
  size_t reachable_states = 0;                 // YES certificate
  std::optional<LassoPseudoOrbit> witness;     // NO witness
  std::optional<size_t> failing_prefix_len;    // unrolled index where it dies
};

/// Exact (epsilon, delta)-shadowing decision: YES iff no empty viable set is
/// reachable in the subset construction over the delta-step graph, starting
/// from (x0, ball(x0, epsilon)) for every x0. Deterministic: BFS in point
/// order, so the NO witness is the lexicographically least among shortest.
ShadowingVerdict decide_shadowing(const System& f, const Rat& epsilon, const Rat& delta,
                                  const Budget& budget = Budget{});

struct MaxDelta {
  /// Largest candidate delta for which the decider answers YES; 0 when no
  /// positive candidate works.
  Rat value;
  /// True when value is the exact supremum of workable deltas, i.e.
  /// feasibility fails just above it. False when value is 0 or when every
  /// delta works.
  bool attained;
  /// True when every positive delta works (the feasible set is unbounded);
  /// value then reports the largest candidate, if any exists.
  bool unbounded;
};

/// Scans the candidate grid (distance spectrum joined with the step-slack
/// spectrum) by binary search, which the down-closedness of the feasible set
/// makes exact.
MaxDelta max_delta(const System& f, const Rat& epsilon, const Budget& budget = Budget{});

/// nullopt iff decide_shadowing answers YES; otherwise a validated lasso
/// whose viable trace empties.
std::optional<LassoPseudoOrbit> unshadowable_witness(const System& f, const Rat& epsilon,
                                                     const Rat& delta,
                                                     const Budget& budget = Budget{});

struct CgVerdict {
  bool yes;
  size_t maps_checked = 0;
  std::optional<SystemMap> witness_map;  // a g within delta of f whose orbit escapes
  std::optional<int> witness_start;
};

/// Continuously-generated shadowing: every orbit of every map g with
/// rho(f, g) < delta must be epsilon-shadowed by an f-orbit. The maps g are
/// enumerated exhaustively (their count is the product of per-point option
/// sizes); exceeding the budget throws rather than sampling.
CgVerdict decide_cg_shadowing(const System& f, const Rat& epsilon, const Rat& delta,
                              const Budget& budget = Budget{});

struct EventualVerdict {
  bool yes;
  size_t reachable_states = 0;
  std::optional<LassoPseudoOrbit> witness;  // pseudo-orbit needing infinitely many restarts
};

/// Eventual shadowing: every infinite delta-pseudo-orbit has a suffix
/// epsilon-shadowed by some orbit. Decided by the restart construction: an
/// emptied viable set reseeds and marks the edge; the answer is no iff a
/// reachable cycle of the subset graph contains a marked edge.
EventualVerdict decide_eventual_shadowing(const System& f, const Rat& epsilon, const Rat& delta,
                                          const Budget& budget = Budget{});

/// Constructive delta for rigid systems: takes the clopen cover at epsilon,
/// its separation eta, the least N with rho(f^N, id) < eta, and returns
/// min(continuity_modulus(f, eta, N), eta). nullopt when no iterate of f
/// comes close enough to the identity.
std::optional<Rat> shadowing_delta_from_rigidity(const System& f, const Rat& epsilon);

/// Constructive delta for systems whose iterates converge to a constant map:
/// N is the first exponent from which rho(f^m, const) < epsilon/3, and delta
/// is the continuity modulus for epsilon/(3N) over N steps. nullopt when the
/// iterates do not collapse to a single point.
std::optional<Rat> shadowing_delta_from_convergence(const System& f, const Rat& epsilon);

/// Candidate values at which shadowing feasibility can change: the distance
/// spectrum joined with all step slacks d(f(x), y), positive entries only.
std::vector<Rat> delta_candidates(const System& f);

}  // namespace dynlab
