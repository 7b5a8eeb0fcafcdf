#include "dynlab/system_map.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dynlab {

std::optional<SystemViolation> validate_system(const FiniteMetricSpace& space,
                                               const SystemMap& map) {
  if (map.size() != space.size()) {
    return SystemViolation{-1, "image table size does not match the space"};
  }
  for (int i = 0; i < map.size(); ++i) {
    if (map.image[i] < 0 || map.image[i] >= space.size()) {
      return SystemViolation{i, "image index out of range at " + space.labels[i]};
    }
  }
  return std::nullopt;
}

Rat rho_distance(const FiniteMetricSpace& space, const SystemMap& f, const SystemMap& g) {
  if (f.size() != space.size() || g.size() != space.size()) {
    throw std::invalid_argument("rho_distance: maps live on different spaces");
  }
  Rat best = 0;
  for (int x = 0; x < space.size(); ++x) {
    best = std::max(best, space.at(f(x), g(x)));
  }
  return best;
}

SystemMap identity_map(int n) {
  SystemMap m;
  m.image.resize(n);
  std::iota(m.image.begin(), m.image.end(), 0);
  return m;
}

SystemMap constant_map(int n, int target) {
  SystemMap m;
  m.image.assign(n, target);
  return m;
}

SystemMap compose(const SystemMap& outer, const SystemMap& inner) {
  SystemMap m;
  m.image.resize(inner.size());
  for (int i = 0; i < inner.size(); ++i) m.image[i] = outer(inner(i));
  return m;
}

SystemMap iterate_map(const SystemMap& f, long long n) {
  if (n < 0) throw std::invalid_argument("iterate_map: negative exponent");
  SystemMap acc = identity_map(f.size());
  for (long long i = 0; i < n; ++i) acc = compose(f, acc);
  return acc;
}

std::optional<Rat> continuity_modulus(const System& f, const Rat& eta, int n) {
  if (eta <= 0) throw std::invalid_argument("continuity_modulus: eta must be positive");
  if (n < 0) throw std::invalid_argument("continuity_modulus: n must be nonnegative");
  // A pair (a,b) is "bad" when some iterate up to n pushes it to distance
  // >= eta. The modulus is the least bad-pair distance: below it no bad pair
  // is admitted, at or above it one is.
  std::optional<Rat> least_bad;
  SystemMap fi = identity_map(f.size());
  std::vector<Rat> growth(static_cast<size_t>(f.size()) * f.size(), Rat(0));
  for (int step = 0; step <= n; ++step) {
    for (int a = 0; a < f.size(); ++a) {
      for (int b = a + 1; b < f.size(); ++b) {
        Rat& g = growth[static_cast<size_t>(a) * f.size() + b];
        g = std::max(g, f.space.at(fi(a), fi(b)));
      }
    }
    if (step < n) fi = compose(f.map, fi);
  }
  for (int a = 0; a < f.size(); ++a) {
    for (int b = a + 1; b < f.size(); ++b) {
      if (growth[static_cast<size_t>(a) * f.size() + b] >= eta) {
        const Rat& d = f.space.at(a, b);
        if (!least_bad || d < *least_bad) least_bad = d;
      }
    }
  }
  return least_bad;
}

namespace {

// Tail length (steps to reach a cycle) and cycle length per point of the
// functional graph of f.
struct OrbitShape {
  std::vector<int> tail;
  std::vector<int> cycle;
};

OrbitShape orbit_shape(const SystemMap& f) {
  const int n = f.size();
  OrbitShape shape;
  shape.tail.assign(n, -1);
  shape.cycle.assign(n, -1);
  std::vector<int> state(n, 0);  // 0 unvisited, 1 on stack, 2 done
  for (int start = 0; start < n; ++start) {
    if (state[start] != 0) continue;
    std::vector<int> path;
    int x = start;
    while (state[x] == 0) {
      state[x] = 1;
      path.push_back(x);
      x = f(x);
    }
    if (state[x] == 1) {
      // Found a new cycle; locate its entry inside the current path.
      const auto entry = std::find(path.begin(), path.end(), x);
      const int cycle_len = static_cast<int>(path.end() - entry);
      for (auto it = entry; it != path.end(); ++it) {
        shape.tail[*it] = 0;
        shape.cycle[*it] = cycle_len;
      }
      for (auto it = std::make_reverse_iterator(entry); it != path.rend(); ++it) {
        shape.tail[*it] = shape.tail[f(*it)] + 1;
        shape.cycle[*it] = cycle_len;
      }
    } else {
      // Ran into already-resolved territory; the whole path is a tail.
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const int next = f(*it);
        shape.tail[*it] = shape.tail[next] + 1;
        shape.cycle[*it] = shape.cycle[next];
      }
    }
    for (int p : path) state[p] = 2;
  }
  return shape;
}

}  // namespace

IterateProfile iterate_semigroup(const System& f) {
  const int n = f.size();
  const OrbitShape shape = orbit_shape(f.map);

  IterateProfile profile;
  profile.tail_len = 0;
  BigInt lcm_cycles = 1;
  for (int x = 0; x < n; ++x) {
    profile.tail_len = std::max(profile.tail_len, shape.tail[x]);
    if (shape.tail[x] == 0) {
      lcm_cycles = boost::multiprecision::lcm(lcm_cycles, BigInt(shape.cycle[x]));
    }
  }
  profile.cycle_len = lcm_cycles;

  const BigInt floor_exp = std::max<BigInt>(BigInt(profile.tail_len), BigInt(1));
  profile.idempotent_exp = ((floor_exp + profile.cycle_len - 1) / profile.cycle_len) * profile.cycle_len;

  profile.eventual_image = PointSet(n);
  for (int x = 0; x < n; ++x) {
    if (shape.tail[x] == 0) profile.eventual_image.set(x);
  }
  if (profile.eventual_image.count() == 1) {
    profile.limit_constant = static_cast<int>(profile.eventual_image.find_first());
  }
  return profile;
}

SystemMap iterate_map_big(const System& f, const BigInt& n) {
  if (n < 0) throw std::invalid_argument("iterate_map_big: negative exponent");
  const OrbitShape shape = orbit_shape(f.map);
  SystemMap out;
  out.image.resize(f.size());
  for (int x = 0; x < f.size(); ++x) {
    BigInt steps = n;
    // Walk the tail explicitly, then reduce the remainder modulo the cycle.
    int pos = x;
    BigInt tail_steps = std::min<BigInt>(steps, BigInt(shape.tail[x]));
    for (BigInt i = 0; i < tail_steps; ++i) pos = f.step(pos);
    steps -= tail_steps;
    if (steps > 0) {
      const BigInt rem = steps % BigInt(shape.cycle[x]);
      const long long r = rem.convert_to<long long>();
      for (long long i = 0; i < r; ++i) pos = f.step(pos);
    }
    out.image[x] = pos;
  }
  return out;
}

}  // namespace dynlab
