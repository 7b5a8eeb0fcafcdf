#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dynlab/metric_space.hpp"
#include "dynlab/point_set.hpp"
#include "dynlab/rational.hpp"

namespace dynlab {

/// A total self-map on a finite metric space, stored as an index table.
struct SystemMap {
  std::vector<int> image;

  int size() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[i]; }
};

/// A space together with a self-map on it; the unit every dynamical
/// operation consumes. Value type, immutable by convention.
struct System {
  FiniteMetricSpace space;
  SystemMap map;

  int size() const { return space.size(); }
  int step(int i) const { return map.image[i]; }
};

struct SystemViolation {
  int index;  // offending table position, -1 for shape problems
  std::string message;
};

std::optional<SystemViolation> validate_system(const FiniteMetricSpace& space,
                                               const SystemMap& map);

/// Sup metric on self-maps: max over points of d(f(x), g(x)).
/// Throws on maps over different-sized spaces.
Rat rho_distance(const FiniteMetricSpace& space, const SystemMap& f, const SystemMap& g);

SystemMap identity_map(int n);
SystemMap constant_map(int n, int target);
SystemMap compose(const SystemMap& outer, const SystemMap& inner);
SystemMap iterate_map(const SystemMap& f, long long n);

/// Largest delta in the distance spectrum such that d(a,b) < delta forces
/// d(f^i(a), f^i(b)) < eta for every i <= n and every pair; nullopt when the
/// implication holds with no restriction at all (conceptually infinite).
/// Never smaller than the minimum positive distance.
std::optional<Rat> continuity_modulus(const System& f, const Rat& eta, int n);

/// The iterate semigroup data of a finite system: minimal tail/cycle of the
/// sequence f, f^2, ..., the idempotent power, and the eventual image
/// R = f^tail(X), which the iterates retract onto.
struct IterateProfile {
  int tail_len = 0;                  // minimal t with f^{t+c} = f^t
  BigInt cycle_len = 1;              // minimal c, the lcm of cycle lengths
  BigInt idempotent_exp = 1;         // least multiple of c that is >= max(t, 1)
  PointSet eventual_image;           // R = f^t(X), equals the set of cyclic points
  std::optional<int> limit_constant; // the unique point of R when |R| = 1
};

IterateProfile iterate_semigroup(const System& f);

/// Evaluates f^n pointwise for exponents that may exceed any machine
/// integer, using the eventual periodicity of every orbit.
SystemMap iterate_map_big(const System& f, const BigInt& n);

}  // namespace dynlab
