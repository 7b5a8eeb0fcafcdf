#include "dynlab/builders.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace dynlab {

namespace {

FiniteMetricSpace space_from_distance(const std::vector<Rat>& coords,
                                      const std::vector<std::string>& labels,
                                      bool circle) {
  FiniteMetricSpace space;
  space.labels = labels;
  const int n = static_cast<int>(coords.size());
  if (n > max_point_budget()) {
    throw std::invalid_argument("space exceeds the configured point budget");
  }
  space.dist.assign(static_cast<size_t>(n) * n, Rat(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Rat d = coords[i] - coords[j];
      if (d < 0) d = -d;
      if (circle) d = std::min(d, Rat(1) - d);
      space.at(i, j) = d;
    }
  }
  return space;
}

Rat mod_one(const Rat& x) {
  const BigInt num = numerator(x);
  const BigInt den = denominator(x);
  BigInt rem = num % den;
  if (rem < 0) rem += den;
  return Rat(rem, den);
}

void check_built(const System& system, const char* what) {
  if (auto violation = validate_metric(system.space)) {
    throw std::runtime_error(std::string(what) + ": metric validation failed: " + violation->message);
  }
  if (auto violation = validate_system(system.space, system.map)) {
    throw std::runtime_error(std::string(what) + ": map validation failed: " + violation->message);
  }
}

// splitmix64; keeps random_system reproducible independent of the standard
// library's distribution implementations.
struct Rng {
  uint64_t state;
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ull;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  uint64_t below(uint64_t bound) { return next() % bound; }
};

}  // namespace

FiniteMetricSpace line_space(const std::vector<Rat>& coordinates) {
  std::vector<std::string> labels;
  labels.reserve(coordinates.size());
  for (const Rat& c : coordinates) labels.push_back(rat_to_string(c));
  return space_from_distance(coordinates, labels, false);
}

FiniteMetricSpace circle_space(const std::vector<Rat>& coordinates) {
  std::vector<Rat> reduced;
  std::vector<std::string> labels;
  reduced.reserve(coordinates.size());
  for (const Rat& c : coordinates) {
    reduced.push_back(mod_one(c));
    labels.push_back(rat_to_string(reduced.back()));
  }
  return space_from_distance(reduced, labels, true);
}

System build_interval_grid(int n) {
  if (n < 1) throw std::invalid_argument("interval_grid: n must be >= 1");
  std::vector<Rat> coords;
  for (int i = 0; i <= n; ++i) coords.emplace_back(i, n);
  System system{line_space(coords), identity_map(n + 1)};
  check_built(system, "interval_grid");
  return system;
}

System build_circle_grid(int n, const Rat& rotation) {
  if (n < 1) throw std::invalid_argument("circle_grid: n must be >= 1");
  const Rat reduced = mod_one(rotation);
  if (BigInt(n) % denominator(reduced) != 0) {
    throw std::invalid_argument("circle_grid: rotation denominator must divide n");
  }
  std::vector<Rat> coords;
  for (int i = 0; i < n; ++i) coords.emplace_back(i, n);
  // Shift in grid units: p/q = (p * n/q) / n.
  const BigInt shift_big = numerator(reduced) * (BigInt(n) / denominator(reduced));
  const int shift = (shift_big % n).convert_to<int>();
  SystemMap map;
  map.image.resize(n);
  for (int i = 0; i < n; ++i) map.image[i] = (i + shift) % n;
  System system{circle_space(coords), std::move(map)};
  check_built(system, "circle_grid");
  return system;
}

System build_cantor(int level) {
  if (level < 1) throw std::invalid_argument("cantor: level must be >= 1");
  std::vector<std::pair<Rat, Rat>> intervals{{Rat(0), Rat(1)}};
  for (int m = 0; m < level; ++m) {
    std::vector<std::pair<Rat, Rat>> next;
    next.reserve(intervals.size() * 2);
    for (const auto& [a, b] : intervals) {
      const Rat third = (b - a) / 3;
      next.emplace_back(a, a + third);
      next.emplace_back(b - third, b);
    }
    intervals = std::move(next);
  }
  std::vector<Rat> coords;
  coords.reserve(intervals.size() * 2);
  for (const auto& [a, b] : intervals) {
    coords.push_back(a);
    coords.push_back(b);
  }
  std::sort(coords.begin(), coords.end());
  FiniteMetricSpace space = line_space(coords);
  SystemMap map;
  map.image.resize(space.size());
  for (size_t i = 0; i < coords.size(); ++i) {
    const Rat image_value = coords[i] <= Rat(1, 3) ? coords[i] * 3 : Rat(0);
    const auto target = std::lower_bound(coords.begin(), coords.end(), image_value);
    if (target == coords.end() || *target != image_value) {
      throw std::logic_error("cantor: endpoint set not closed under t");
    }
    map.image[i] = static_cast<int>(target - coords.begin());
  }
  System system{std::move(space), std::move(map)};
  check_built(system, "cantor");
  return system;
}

System build_shift_to_limit(int k) {
  if (k < 1) throw std::invalid_argument("shift_to_limit: k must be >= 1");
  std::vector<Rat> coords;
  coords.emplace_back(0);
  for (int j = k; j >= 0; --j) coords.push_back(Rat(1, BigInt(1) << j));
  // coords are sorted: 0, 2^-k, ..., 1/2, 1.
  FiniteMetricSpace space = line_space(coords);
  SystemMap map;
  map.image.resize(space.size());
  const int n = space.size();
  map.image[0] = 0;              // f(0) = 0
  map.image[n - 1] = 0;          // f(1) = 0
  for (int i = 1; i + 1 < n; ++i) map.image[i] = i + 1;  // f(2^-j) = 2^-(j-1)
  System system{std::move(space), std::move(map)};
  check_built(system, "shift_to_limit");
  return system;
}

System build_cone(const System& base, int k) {
  if (k < 1) throw std::invalid_argument("cone: k must be >= 1");
  const int base_n = base.size();
  std::vector<Rat> heights;  // descending: 1, 1/2, ..., 2^-k
  for (int j = 0; j <= k; ++j) heights.push_back(Rat(1, BigInt(1) << j));

  // Point layout: level-major (height 1 first), apex last.
  FiniteMetricSpace space;
  const int n = base_n * static_cast<int>(heights.size()) + 1;
  if (n > max_point_budget()) throw std::invalid_argument("cone exceeds the configured point budget");
  const int apex = n - 1;
  auto point_id = [&](int level, int y) { return level * base_n + y; };
  space.labels.resize(n);
  for (size_t level = 0; level < heights.size(); ++level) {
    for (int y = 0; y < base_n; ++y) {
      space.labels[point_id(static_cast<int>(level), y)] =
          base.space.labels[y] + "@" + rat_to_string(heights[level]);
    }
  }
  space.labels[apex] = "apex";

  space.dist.assign(static_cast<size_t>(n) * n, Rat(0));
  auto height_of = [&](int p) { return p == apex ? Rat(0) : heights[p / base_n]; };
  auto base_of = [&](int p) { return p % base_n; };
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      if (p == q) continue;
      const Rat sp = height_of(p);
      const Rat sq = height_of(q);
      Rat vertical = sp - sq;
      if (vertical < 0) vertical = -vertical;
      Rat lateral = 0;
      if (p != apex && q != apex) {
        lateral = std::min(sp, sq) * base.space.at(base_of(p), base_of(q));
      }
      space.at(p, q) = vertical + lateral;
    }
  }

  SystemMap map;
  map.image.resize(n);
  map.image[apex] = apex;
  for (size_t level = 0; level < heights.size(); ++level) {
    for (int y = 0; y < base_n; ++y) {
      const int from = point_id(static_cast<int>(level), y);
      map.image[from] = level + 1 < heights.size()
                            ? point_id(static_cast<int>(level) + 1, base.step(y))
                            : apex;
    }
  }

  System system{std::move(space), std::move(map)};
  if (auto violation = validate_metric(system.space)) {
    throw std::runtime_error("cone: metric validation failed: " + violation->message);
  }
  if (auto violation = validate_system(system.space, system.map)) {
    throw std::runtime_error("cone: map validation failed: " + violation->message);
  }
  return system;
}

System random_system(int point_count, uint64_t seed, bool permutation) {
  if (point_count < 1) throw std::invalid_argument("random_system: point_count must be >= 1");
  Rng rng{seed * 0x9e3779b97f4a7c15ull + 0x2545f4914f6cdd1dull};
  const uint64_t range = static_cast<uint64_t>(point_count) * point_count * 4 + 1;
  std::vector<uint64_t> raw;
  while (static_cast<int>(raw.size()) < point_count) {
    const uint64_t candidate = rng.below(range);
    if (std::find(raw.begin(), raw.end(), candidate) == raw.end()) raw.push_back(candidate);
  }
  std::vector<Rat> coords;
  std::vector<std::string> labels;
  for (int i = 0; i < point_count; ++i) {
    coords.emplace_back(BigInt(raw[i]));
    labels.push_back("p" + std::to_string(i));
  }
  FiniteMetricSpace space = space_from_distance(coords, labels, false);

  SystemMap map;
  map.image.resize(point_count);
  if (permutation) {
    std::vector<int> perm(point_count);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = point_count - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    map.image = std::move(perm);
  } else {
    for (int i = 0; i < point_count; ++i) {
      map.image[i] = static_cast<int>(rng.below(static_cast<uint64_t>(point_count)));
    }
  }
  System system{std::move(space), std::move(map)};
  check_built(system, "random_system");
  return system;
}

}  // namespace dynlab
