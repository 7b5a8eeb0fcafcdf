#pragma once

#include <cstdint>
#include <vector>

#include "dynlab/rational.hpp"
#include "dynlab/system_map.hpp"

namespace dynlab {

/// Evenly spaced points i/n on [0,1] with |x-y| distances and the identity
/// map; the n+1-point discretization of the interval.
System build_interval_grid(int n);

/// Points i/n on the unit circle with arc metric min(|x-y|, 1-|x-y|) and
/// rotation by the given angle p/q; requires q | n so the grid is invariant.
System build_circle_grid(int n, const Rat& rotation);

/// All endpoints of the level-M middle-third intervals (2^{M+1} rationals)
/// with the tent-like map t(x) = 3x for x <= 1/3 and t(x) = 0 for x >= 2/3.
/// The endpoint set is closed under t; the image is the level-(M-1) set.
System build_cantor(int level);

/// Points {0} and {2^-j : 0 <= j <= k} where f shifts each isolated point to
/// the next larger one, 1 maps to the limit 0, and 0 is fixed.
System build_shift_to_limit(int k);

/// Cone over a base system: heights {2^-j : 0 <= j <= k} plus an apex at
/// height 0 that all bottom points collapse to. f((y,s)) = (g(y), next lower
/// height), apex fixed; metric d((y,s),(y',s')) = |s-s'| + min(s,s')*d_Y(y,y').
/// The metric is verified at build time and the build throws rather than
/// silently substituting a different formula.
System build_cone(const System& base, int k);

/// Deterministic pseudo-random system: distinct integer coordinates on the
/// line (so all metric axioms hold by construction) and a uniform map, or a
/// uniform permutation when requested. Identical output for identical seeds.
System random_system(int point_count, uint64_t seed, bool permutation);

/// Line-embedded space from exact coordinates; labels are the coordinate
/// strings. Shared by the grid/cantor/shift builders and the file parser.
FiniteMetricSpace line_space(const std::vector<Rat>& coordinates);

/// Circle-embedded space; coordinates are taken mod 1.
FiniteMetricSpace circle_space(const std::vector<Rat>& coordinates);

}  // namespace dynlab
