#include "dynlab/recurrence.hpp"

#include <algorithm>
#include <deque>

#include "dynlab/metric_space.hpp"
#include "dynlab/pseudo_orbit.hpp"

namespace dynlab {

PointSet periodic_points(const SystemMap& f) {
  const int n = f.size();
  PointSet cyclic(n);
  std::vector<int> state(n, 0);
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
      bool in_cycle = false;
      for (int p : path) {
        if (p == x) in_cycle = true;
        if (in_cycle) cyclic.set(p);
      }
    }
    for (int p : path) state[p] = 2;
  }
  return cyclic;
}

bool is_permutation(const SystemMap& f) {
  std::vector<bool> hit(f.size(), false);
  for (int x = 0; x < f.size(); ++x) {
    if (hit[f(x)]) return false;
    hit[f(x)] = true;
  }
  return true;
}

namespace {

struct OrbitLasso {
  std::vector<int> points;  // tail then cycle
  int tail_len;
  int cycle_len;
};

OrbitLasso orbit_of(const SystemMap& f, int start) {
  std::vector<int> order;
  std::vector<int> seen_at(f.size(), -1);
  int x = start;
  while (seen_at[x] < 0) {
    seen_at[x] = static_cast<int>(order.size());
    order.push_back(x);
    x = f(x);
  }
  OrbitLasso lasso;
  lasso.tail_len = seen_at[x];
  lasso.cycle_len = static_cast<int>(order.size()) - seen_at[x];
  lasso.points = std::move(order);
  return lasso;
}

int orbit_point(const OrbitLasso& lasso, long long i) {
  if (i < lasso.tail_len) return lasso.points[i];
  return lasso.points[lasso.tail_len + (i - lasso.tail_len) % lasso.cycle_len];
}

}  // namespace

RecurrenceReport recurrence_report(const System& f) {
  RecurrenceReport report;
  report.is_recurrent_system = is_permutation(f.map);
  if (report.is_recurrent_system) {
    report.period = iterate_semigroup(f).cycle_len;
  }
  for (const Rat& e : distance_spectrum(f.space)) {
    if (e > 0) report.epsilons.push_back(e);
  }
  report.return_times.assign(report.epsilons.size(), {});
  std::vector<OrbitLasso> orbits;
  orbits.reserve(f.size());
  for (int x = 0; x < f.size(); ++x) orbits.push_back(orbit_of(f.map, x));
  for (size_t e = 0; e < report.epsilons.size(); ++e) {
    auto& row = report.return_times[e];
    row.assign(f.size(), std::nullopt);
    for (int x = 0; x < f.size(); ++x) {
      const OrbitLasso& orbit = orbits[x];
      const long long horizon = orbit.tail_len + orbit.cycle_len;
      for (long long n = 1; n <= horizon; ++n) {
        if (f.space.at(orbit_point(orbit, n), x) < report.epsilons[e]) {
          row[x] = n;
          break;
        }
      }
    }
  }
  return report;
}

Rat rigidity_defect(const System& f, long long horizon) {
  if (horizon < 1) throw std::invalid_argument("rigidity_defect: horizon must be >= 1");
  const SystemMap id = identity_map(f.size());
  SystemMap fi = f.map;
  Rat best = rho_distance(f.space, fi, id);
  for (long long n = 2; n <= horizon && best > 0; ++n) {
    fi = compose(f.map, fi);
    best = std::min(best, rho_distance(f.space, fi, id));
  }
  return best;
}

std::optional<long long> almost_periodic_bound(const System& f, int x, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("almost_periodic_bound: epsilon must be positive");
  if (x < 0 || x >= f.size()) throw std::invalid_argument("almost_periodic_bound: bad point");
  const OrbitLasso orbit = orbit_of(f.map, x);

  // Return positions are eventually periodic; if the cycle part never comes
  // back within epsilon, late windows are all empty and no bound exists.
  bool cycle_returns = false;
  for (long long i = orbit.tail_len; i < orbit.tail_len + orbit.cycle_len; ++i) {
    if (f.space.at(orbit_point(orbit, i), x) < epsilon) {
      cycle_returns = true;
      break;
    }
  }
  if (!cycle_returns) return std::nullopt;

  // The largest wait until the next return stabilizes within one extra
  // period, so scanning start positions up to tail + cycle suffices.
  long long worst_wait = 0;
  const long long scan = orbit.tail_len + orbit.cycle_len;
  for (long long start = 0; start < scan; ++start) {
    long long wait = 0;
    while (!(f.space.at(orbit_point(orbit, start + wait), x) < epsilon)) ++wait;
    worst_wait = std::max(worst_wait, wait);
  }
  return worst_wait + 1;
}

PointSet chain_reach(const System& f, int p, const Rat& delta) {
  if (p < 0 || p >= f.size()) throw std::invalid_argument("chain_reach: bad point");
  const StepGraph graph = build_step_graph(f, delta);
  PointSet reach(f.size());
  std::deque<int> queue;
  auto push_targets = [&](int from) {
    const PointSet& succ = graph.successors[from];
    for (size_t y = succ.find_first(); y != PointSet::npos; y = succ.find_next(y)) {
      if (!reach.test(y)) {
        reach.set(y);
        queue.push_back(static_cast<int>(y));
      }
    }
  };
  push_targets(p);
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    push_targets(u);
  }
  return reach;
}

PointSet chain_accessible_core(const System& f, int p) {
  if (p < 0 || p >= f.size()) throw std::invalid_argument("chain_accessible_core: bad point");
  PointSet reach(f.size());
  int x = f.step(p);
  while (!reach.test(x)) {
    reach.set(x);
    x = f.step(x);
  }
  return reach;
}

std::vector<ChainClass> chain_classes(const System& f, const Rat& delta) {
  const StepGraph graph = build_step_graph(f, delta);
  const int n = f.size();

  // Forward reach (length >= 1) per point, by bitset closure.
  std::vector<PointSet> reach(graph.successors);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < n; ++x) {
      PointSet next = reach[x];
      for (size_t y = reach[x].find_first(); y != PointSet::npos; y = reach[x].find_next(y)) {
        next |= graph.successors[y];
      }
      if (next != reach[x]) {
        reach[x] = std::move(next);
        changed = true;
      }
    }
  }

  std::vector<ChainClass> classes;
  std::vector<bool> assigned(n, false);
  for (int x = 0; x < n; ++x) {
    if (assigned[x] || !reach[x].test(x)) continue;  // needs a closed walk through x
    ChainClass cls;
    cls.delta = delta;
    for (int y = x; y < n; ++y) {
      if (!assigned[y] && reach[x].test(y) && reach[y].test(x) && reach[y].test(y)) {
        cls.members.push_back(y);
        assigned[y] = true;
      }
    }
    cls.transitive = true;
    for (int a : cls.members) {
      for (int b : cls.members) {
        if (!reach[a].test(b)) cls.transitive = false;
      }
    }
    // Minimal: following f from any member traces one cycle through exactly
    // the members.
    cls.minimal = false;
    std::vector<int> visited;
    int pos = cls.members.front();
    bool stayed_inside = true;
    do {
      if (!std::binary_search(cls.members.begin(), cls.members.end(), pos)) {
        stayed_inside = false;
        break;
      }
      visited.push_back(pos);
      pos = f.step(pos);
    } while (pos != cls.members.front() && visited.size() <= cls.members.size());
    if (stayed_inside && pos == cls.members.front()) {
      std::sort(visited.begin(), visited.end());
      cls.minimal = visited == cls.members;
    }
    classes.push_back(std::move(cls));
  }
  return classes;
}

ClassificationReport classify_system(const System& f, std::optional<long long> horizon) {
  ClassificationReport report;
  report.iterates = iterate_semigroup(f);
  report.is_perm = is_permutation(f.map);
  if (report.is_perm) report.period = report.iterates.cycle_len;

  if (horizon) {
    report.horizon = *horizon;
  } else {
    BigInt natural = BigInt(report.iterates.tail_len) + report.iterates.cycle_len;
    if (natural > 1'000'000) natural = 1'000'000;
    report.horizon = std::max<long long>(1, natural.convert_to<long long>());
  }
  report.defect = rigidity_defect(f, report.horizon);

  for (const Rat& d : distance_spectrum(f.space)) {
    if (d <= 0) continue;
    const auto classes = chain_classes(f, d);
    ChainClassSummary summary{d, classes.size(), 0, 0};
    for (const auto& cls : classes) {
      if (cls.minimal) ++summary.minimal_count;
      summary.covered_points += cls.members.size();
    }
    report.class_summary.push_back(summary);
  }

  const size_t image_size = report.iterates.eventual_image.count();
  if (report.is_perm) {
    report.theorem_notes.push_back(
        "recurrent system: f is a permutation with period " + report.period->str() +
        "; at delta <= the least positive gap every chain class is a single f-cycle, so the "
        "space partitions into minimal sets");
  }
  if (report.defect == 0) {
    report.theorem_notes.push_back(
        "uniformly rigid at horizon " + std::to_string(report.horizon) +
        " (defect 0): the rigidity construction produces a working delta for every epsilon");
  } else if (report.is_perm) {
    report.theorem_notes.push_back("permutation with defect " + rat_to_string(report.defect) +
                                   " at horizon " + std::to_string(report.horizon) +
                                   ": enlarge the horizon past the period to reach defect 0");
  }
  if (report.iterates.limit_constant) {
    report.theorem_notes.push_back(
        "iterates collapse to the constant map at " +
        f.space.labels[*report.iterates.limit_constant] + " after " +
        std::to_string(report.iterates.tail_len) +
        " steps: the convergence construction produces a working delta for every epsilon");
  } else if (!report.is_perm && image_size > 1) {
    report.theorem_notes.push_back(
        "non-recurrent with eventual image of " + std::to_string(image_size) +
        " points: shift-style obstruction expected, max_delta governed by the injection gaps");
  }
  return report;
}

}  // namespace dynlab
