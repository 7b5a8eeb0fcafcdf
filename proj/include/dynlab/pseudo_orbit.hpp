#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "dynlab/rational.hpp"
#include "dynlab/system_map.hpp"

namespace dynlab {

/// A finite delta-chain: consecutive steps satisfy d(f(x_i), x_{i+1}) < delta.
struct Chain {
  std::vector<int> points;
  Rat delta;
};

/// Finite stem plus a repeating cycle: the canonical representation of an
/// eventually periodic infinite pseudo-orbit. The unrolling stem.cycle^w must
/// satisfy the strict delta condition at every step, wrap included.
struct LassoPseudoOrbit {
  std::vector<int> stem;
  std::vector<int> cycle;
  Rat delta;

  /// Point at the given unrolled position.
  int at(size_t index) const {
    if (index < stem.size()) return stem[index];
    return cycle[(index - stem.size()) % cycle.size()];
  }
};

/// The delta-step relation d(f(x), y) < delta reified as a graph. Walks are
/// exactly the delta-pseudo-orbit prefixes; x -> f(x) is always present for
/// delta > 0.
struct StepGraph {
  Rat delta;
  std::vector<PointSet> successors;
};

/// Thrown by constructions whose stated preconditions fail; carries the
/// offending position when one exists.
struct PreconditionError : std::invalid_argument {
  PreconditionError(const std::string& message, std::optional<size_t> index = std::nullopt)
      : std::invalid_argument(message), index(index) {}
  std::optional<size_t> index;
};

/// nullopt when every step satisfies the strict condition; otherwise the
/// first violating step index. Throws on an empty sequence or bad indices.
std::optional<size_t> validate_chain(const System& f, const std::vector<int>& seq,
                                     const Rat& delta);

/// nullopt when the full unrolling validates; otherwise the first violating
/// unrolled step index (checked over stem, stem->cycle, cycle and wrap).
std::optional<size_t> validate_lasso(const System& f, const LassoPseudoOrbit& po);

/// Joins chains sharing an endpoint; deltas must agree exactly.
Chain concatenate_chains(const Chain& c1, const Chain& c2);

/// Extends a chain to the canonical lasso by appending the true orbit of its
/// last point: x_{n+j} = f^j(x_n).
LassoPseudoOrbit extend_to_lasso(const System& f, const Chain& chain);

/// Chain from y back to x through x's periodic orbit, using the least period
/// multiple M > 2: (y, f^2(x), ..., f^{M-1}(x), x). Returns nullopt when x is
/// not periodic or d(f(x), y) fails the 1-step continuity threshold for delta.
std::optional<Chain> reverse_chain(const System& f, int x, int y, const Rat& delta);

/// For a permutation f and p, q in the same (delta/2)-component: the spatial
/// chain between them with each intermediate point's full period spliced in,
/// giving a delta-chain from p to q. Returns nullopt when f is not a
/// permutation or the points lie in different components.
std::optional<Chain> chain_through_component(const System& f, int p, int q, const Rat& delta);

/// Block pseudo-orbit c_i = f^{i-jN}(a_j) over a spatial chain with steps
/// < delta/2, for N with rho(f^N, id) < delta/2; the final point's block
/// repeats as the lasso cycle. Throws PreconditionError on violated inputs.
LassoPseudoOrbit block_pseudo_orbit(const System& f, const std::vector<int>& spatial_chain,
                                    int big_n, const Rat& delta);

/// The explicit non-shadowable pseudo-orbit on the level-M Cantor system:
/// cycle (3^-M, 3^-(M-1), ..., 1/3, 1), valid exactly when delta > 3^-M.
/// Point indices refer to build_cantor(level).
LassoPseudoOrbit bad_cantor_pseudo_orbit(int level, const Rat& delta);

StepGraph build_step_graph(const System& f, const Rat& delta);

}  // namespace dynlab
