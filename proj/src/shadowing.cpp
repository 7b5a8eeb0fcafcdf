#include "dynlab/shadowing.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <set>
#include <unordered_map>

#include "dynlab/metric_space.hpp"

namespace dynlab {

Budget Budget::from_env() {
  Budget budget;
  if (const char* env = std::getenv("DYNLAB_BUDGET")) {
    const long long v = std::strtoll(env, nullptr, 10);
    if (v > 0) budget.max_states = static_cast<size_t>(v);
  }
  return budget;
}

namespace {

std::vector<PointSet> epsilon_balls(const FiniteMetricSpace& space, const Rat& epsilon) {
  std::vector<PointSet> balls;
  balls.reserve(space.size());
  for (int x = 0; x < space.size(); ++x) balls.push_back(ball(space, x, epsilon));
  return balls;
}

// Lasso of the orbit of start under an arbitrary index table.
LassoPseudoOrbit orbit_lasso(const std::vector<int>& table, int start, const Rat& delta) {
  std::vector<int> order;
  std::vector<int> seen_at(table.size(), -1);
  int x = start;
  while (seen_at[x] < 0) {
    seen_at[x] = static_cast<int>(order.size());
    order.push_back(x);
    x = table[x];
  }
  LassoPseudoOrbit po;
  po.delta = delta;
  po.stem.assign(order.begin(), order.begin() + seen_at[x]);
  po.cycle.assign(order.begin() + seen_at[x], order.end());
  return po;
}

struct SlotStateKey {
  size_t slot;
  PointSet viable;
  bool operator==(const SlotStateKey& other) const {
    return slot == other.slot && viable == other.viable;
  }
};

struct SlotStateHash {
  size_t operator()(const SlotStateKey& key) const {
    return PointSetHash{}(key.viable) * 1315423911u ^ key.slot;
  }
};

}  // namespace

ViableTrace viable_trace(const System& f, const LassoPseudoOrbit& po, const Rat& epsilon,
                         bool restart_on_empty) {
  if (epsilon <= 0) throw std::invalid_argument("viable_trace: epsilon must be positive");
  if (po.cycle.empty()) throw std::invalid_argument("viable_trace: empty cycle");
  const Budget budget = Budget::from_env();
  const auto balls = epsilon_balls(f.space, epsilon);

  ViableTrace trace;
  std::unordered_map<SlotStateKey, size_t, SlotStateHash> seen;

  PointSet viable = balls[po.at(0)];
  trace.steps.push_back(ViableStep{po.at(0), viable, false});
  for (size_t i = 0;; ++i) {
    if (i >= po.stem.size()) {
      const SlotStateKey key{(i - po.stem.size()) % po.cycle.size(), trace.steps.back().viable};
      auto [it, inserted] = seen.emplace(key, i);
      if (!inserted) {
        trace.loop_start = it->second;
        break;
      }
    }
    const int next = po.at(i + 1);
    PointSet advanced = image_of(f.map.image, trace.steps.back().viable) & balls[next];
    bool restarted = false;
    if (advanced.none()) {
      if (!restart_on_empty) {
        trace.steps.push_back(ViableStep{next, advanced, false});
        break;  // emptied: caller reads the failure off the last step
      }
      advanced = balls[next];
      restarted = true;
      trace.restart_marks.push_back(i + 1);
    }
    trace.steps.push_back(ViableStep{next, advanced, restarted});
    if (trace.steps.size() > budget.max_states) throw BudgetExceeded(budget.max_states);
  }
  return trace;
}

ShadowResult shadowability_of(const System& f, const LassoPseudoOrbit& po, const Rat& epsilon) {
  if (auto bad = validate_lasso(f, po)) {
    throw std::invalid_argument("shadowability_of: lasso fails its own delta at step " +
                                std::to_string(*bad));
  }
  const ViableTrace trace = viable_trace(f, po, epsilon, false);
  if (trace.steps.back().viable.none()) {
    return ShadowResult{std::nullopt, trace.steps.size() - 1};
  }

  // Every member of the repeated state's viable set survives forever: the
  // one-period push maps that set onto itself, hence bijectively. Back-trace
  // any member through preimages to a concrete starting shadower.
  const size_t anchor = *trace.loop_start;
  size_t current = trace.steps[anchor].viable.find_first();
  for (size_t i = anchor; i > 0; --i) {
    const PointSet& previous = trace.steps[i - 1].viable;
    bool found = false;
    for (size_t v = previous.find_first(); v != PointSet::npos; v = previous.find_next(v)) {
      if (static_cast<size_t>(f.step(static_cast<int>(v))) == current) {
        current = v;
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("shadowability_of: back-trace lost its preimage");
  }
  const int z = static_cast<int>(current);

  // Soundness check over the traced prefix (one stabilized period included).
  int pos = z;
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    if (!(f.space.at(pos, po.at(i)) < epsilon)) {
      throw std::logic_error("shadowability_of: recovered shadower violates epsilon");
    }
    pos = f.step(pos);
  }
  return ShadowResult{z, std::nullopt};
}

namespace {

// Subset-construction state: pseudo-orbit head plus surviving shadower set.
struct SubsetState {
  int point;
  PointSet viable;
  int parent;  // index into the state vector, -1 for initial states
};

struct SubsetSpace {
  std::vector<SubsetState> states;
  std::vector<std::unordered_map<PointSet, int, PointSetHash>> interned;

  explicit SubsetSpace(int n) : interned(n) {}

  // Returns (id, inserted).
  std::pair<int, bool> intern(int point, PointSet viable, int parent, size_t limit) {
    auto& bucket = interned[point];
    if (auto it = bucket.find(viable); it != bucket.end()) return {it->second, false};
    const int id = static_cast<int>(states.size());
    if (states.size() >= limit) throw BudgetExceeded(limit);
    bucket.emplace(viable, id);
    states.push_back(SubsetState{point, std::move(viable), parent});
    return {id, true};
  }

  std::vector<int> path_points(int id) const {
    std::vector<int> out;
    for (int s = id; s >= 0; s = states[s].parent) out.push_back(states[s].point);
    std::reverse(out.begin(), out.end());
    return out;
  }
};

}  // namespace

ShadowingVerdict decide_shadowing(const System& f, const Rat& epsilon, const Rat& delta,
                                  const Budget& budget) {
  if (epsilon <= 0 || delta <= 0) {
    throw std::invalid_argument("decide_shadowing: epsilon and delta must be positive");
  }
  const auto balls = epsilon_balls(f.space, epsilon);
  const StepGraph graph = build_step_graph(f, delta);

  SubsetSpace space(f.size());
  std::deque<int> queue;
  for (int x0 = 0; x0 < f.size(); ++x0) {
    auto [id, inserted] = space.intern(x0, balls[x0], -1, budget.max_states);
    if (inserted) queue.push_back(id);
  }

  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    const PointSet& successors = graph.successors[space.states[id].point];
    for (size_t y = successors.find_first(); y != PointSet::npos; y = successors.find_next(y)) {
      PointSet advanced = image_of(f.map.image, space.states[id].viable) & balls[y];
      if (advanced.none()) {
        std::vector<int> points = space.path_points(id);
        points.push_back(static_cast<int>(y));
        const size_t failing_index = points.size() - 1;
        LassoPseudoOrbit witness = extend_to_lasso(f, Chain{std::move(points), delta});
        ShadowingVerdict verdict{false, epsilon, delta, space.states.size(),
                                 std::move(witness), failing_index};
        return verdict;
      }
      auto [next_id, inserted] =
          space.intern(static_cast<int>(y), std::move(advanced), id, budget.max_states);
      if (inserted) queue.push_back(next_id);
    }
  }
  return ShadowingVerdict{true, epsilon, delta, space.states.size(), std::nullopt, std::nullopt};
}

std::vector<Rat> delta_candidates(const System& f) {
  std::set<Rat> values;
  for (const Rat& d : distance_spectrum(f.space)) {
    if (d > 0) values.insert(d);
  }
  for (int x = 0; x < f.size(); ++x) {
    for (int y = 0; y < f.size(); ++y) {
      const Rat& slack = f.space.at(f.step(x), y);
      if (slack > 0) values.insert(slack);
    }
  }
  return std::vector<Rat>(values.begin(), values.end());
}

MaxDelta max_delta(const System& f, const Rat& epsilon, const Budget& budget) {
  if (epsilon <= 0) throw std::invalid_argument("max_delta: epsilon must be positive");
  const std::vector<Rat> candidates = delta_candidates(f);

  // Beyond the largest slack the step graph is complete and constant, so one
  // probe decides whether the feasible set is unbounded.
  const Rat beyond = f.space.diameter() + 1;
  if (decide_shadowing(f, epsilon, beyond, budget).yes) {
    return MaxDelta{candidates.empty() ? Rat(0) : candidates.back(), false, true};
  }
  // Feasibility is down-closed over delta, so binary search is exact.
  int lo = 0;
  int hi = static_cast<int>(candidates.size()) - 1;
  int best = -1;
  while (lo <= hi) {
    const int mid = lo + (hi - lo) / 2;
    if (decide_shadowing(f, epsilon, candidates[mid], budget).yes) {
      best = mid;
      lo = mid + 1;
    } else {
      hi = mid - 1;
    }
  }
  if (best < 0) return MaxDelta{Rat(0), false, false};
  return MaxDelta{candidates[best], true, false};
}

std::optional<LassoPseudoOrbit> unshadowable_witness(const System& f, const Rat& epsilon,
                                                     const Rat& delta, const Budget& budget) {
  ShadowingVerdict verdict = decide_shadowing(f, epsilon, delta, budget);
  if (verdict.yes) return std::nullopt;
  return std::move(verdict.witness);
}

CgVerdict decide_cg_shadowing(const System& f, const Rat& epsilon, const Rat& delta,
                              const Budget& budget) {
  if (epsilon <= 0 || delta <= 0) {
    throw std::invalid_argument("decide_cg_shadowing: epsilon and delta must be positive");
  }
  const int n = f.size();
  std::vector<std::vector<int>> options(n);
  size_t total = 1;
  for (int x = 0; x < n; ++x) {
    options[x] = set_to_indices(ball(f.space, f.step(x), delta));
    // Option sets are never empty: f(x) itself is within every positive delta.
    if (total > budget.max_states / options[x].size()) throw BudgetExceeded(budget.max_states);
    total *= options[x].size();
  }

  std::vector<size_t> odometer(n, 0);
  SystemMap g;
  g.image.resize(n);
  CgVerdict verdict{true, 0, std::nullopt, std::nullopt};
  while (true) {
    for (int x = 0; x < n; ++x) g.image[x] = options[x][odometer[x]];
    ++verdict.maps_checked;
    for (int start = 0; start < n; ++start) {
      const LassoPseudoOrbit po = orbit_lasso(g.image, start, delta);
      if (!shadowability_of(f, po, epsilon).shadowed()) {
        verdict.yes = false;
        verdict.witness_map = g;
        verdict.witness_start = start;
        return verdict;
      }
    }
    // Advance the odometer, last coordinate fastest (lexicographic order).
    int pos = n - 1;
    while (pos >= 0) {
      if (++odometer[pos] < options[pos].size()) break;
      odometer[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return verdict;
}

namespace {

// Iterative Tarjan over the subset graph.
std::vector<int> strongly_connected(const std::vector<std::vector<std::pair<int, bool>>>& edges) {
  const int n = static_cast<int>(edges.size());
  std::vector<int> index(n, -1), lowlink(n, 0), component(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;
  int next_component = 0;

  struct Frame {
    int node;
    size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] >= 0) continue;
    std::vector<Frame> call_stack{{root, 0}};
    while (!call_stack.empty()) {
      Frame& frame = call_stack.back();
      const int v = frame.node;
      if (frame.edge == 0) {
        index[v] = lowlink[v] = next_index++;
        stack.push_back(v);
        on_stack[v] = true;
      }
      bool descended = false;
      while (frame.edge < edges[v].size()) {
        const int w = edges[v][frame.edge].first;
        ++frame.edge;
        if (index[w] < 0) {
          call_stack.push_back({w, 0});
          descended = true;
          break;
        }
        if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
      }
      if (descended) continue;
      if (lowlink[v] == index[v]) {
        while (true) {
          const int w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component[w] = next_component;
          if (w == v) break;
        }
        ++next_component;
      }
      call_stack.pop_back();
      if (!call_stack.empty()) {
        const int parent = call_stack.back().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
    }
  }
  return component;
}

}  // namespace

EventualVerdict decide_eventual_shadowing(const System& f, const Rat& epsilon, const Rat& delta,
                                          const Budget& budget) {
  if (epsilon <= 0 || delta <= 0) {
    throw std::invalid_argument("decide_eventual_shadowing: epsilon and delta must be positive");
  }
  const auto balls = epsilon_balls(f.space, epsilon);
  const StepGraph graph = build_step_graph(f, delta);

  SubsetSpace space(f.size());
  std::vector<std::vector<std::pair<int, bool>>> edges;  // (target, restarted)
  std::deque<int> queue;
  for (int x0 = 0; x0 < f.size(); ++x0) {
    auto [id, inserted] = space.intern(x0, balls[x0], -1, budget.max_states);
    if (inserted) queue.push_back(id);
  }
  while (!queue.empty()) {
    const int id = queue.front();
    queue.pop_front();
    if (edges.size() <= static_cast<size_t>(id)) edges.resize(id + 1);
    const PointSet& successors = graph.successors[space.states[id].point];
    for (size_t y = successors.find_first(); y != PointSet::npos; y = successors.find_next(y)) {
      PointSet advanced = image_of(f.map.image, space.states[id].viable) & balls[y];
      bool restarted = false;
      if (advanced.none()) {
        advanced = balls[y];
        restarted = true;
      }
      auto [next_id, inserted] =
          space.intern(static_cast<int>(y), std::move(advanced), id, budget.max_states);
      edges[id].emplace_back(next_id, restarted);
      if (inserted) queue.push_back(next_id);
    }
  }
  edges.resize(space.states.size());

  const std::vector<int> component = strongly_connected(edges);
  // A restart edge inside a strongly connected component witnesses a
  // pseudo-orbit that must restart infinitely often: no suffix is shadowed.
  for (int u = 0; u < static_cast<int>(edges.size()); ++u) {
    for (const auto& [v, restarted] : edges[u]) {
      if (!restarted || component[u] != component[v]) continue;

      // Stem: the construction-time path from an initial state to u.
      std::vector<int> stem_points = space.path_points(u);
      // Cycle: u -> v by the marked edge, then v back to u inside the graph.
      std::vector<int> cycle_points{space.states[u].point};
      if (v != u) {
        std::vector<int> parent(space.states.size(), -1);
        std::deque<int> bfs{v};
        parent[v] = v;
        while (!bfs.empty()) {
          const int s = bfs.front();
          bfs.pop_front();
          if (s == u) break;
          for (const auto& [w, mark] : edges[s]) {
            (void)mark;
            if (parent[w] < 0) {
              parent[w] = s;
              bfs.push_back(w);
            }
          }
        }
        std::vector<int> back;
        for (int s = u; s != v; s = parent[s]) back.push_back(space.states[s].point);
        back.push_back(space.states[v].point);
        std::reverse(back.begin(), back.end());
        // back = points along v..u; drop the final u (cycle wraps onto it).
        back.pop_back();
        cycle_points.insert(cycle_points.end(), back.begin(), back.end());
      }
      stem_points.pop_back();  // u's point opens the cycle instead
      LassoPseudoOrbit witness{std::move(stem_points), std::move(cycle_points), delta};
      return EventualVerdict{false, space.states.size(), std::move(witness)};
    }
  }
  return EventualVerdict{true, space.states.size(), std::nullopt};
}

std::optional<Rat> shadowing_delta_from_rigidity(const System& f, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const auto cover = clopen_cover(f.space, epsilon);
  if (!cover) return std::nullopt;
  if (!cover->separation) {
    // Single block of diameter < epsilon: every point shadows everything.
    return f.space.diameter() + 1;
  }
  const Rat eta = *cover->separation;

  const IterateProfile profile = iterate_semigroup(f);
  BigInt bound_big = BigInt(profile.tail_len) + profile.cycle_len;
  if (bound_big > 1'000'000) bound_big = 1'000'000;
  const long long bound = bound_big.convert_to<long long>();

  SystemMap fi = f.map;
  const SystemMap id = identity_map(f.size());
  std::optional<int> big_n;
  for (long long n = 1; n <= bound; ++n) {
    if (rho_distance(f.space, fi, id) < eta) {
      big_n = static_cast<int>(n);
      break;
    }
    fi = compose(f.map, fi);
  }
  if (!big_n) return std::nullopt;

  const auto modulus = continuity_modulus(f, eta, *big_n);
  return modulus ? std::min(*modulus, eta) : eta;
}

std::optional<Rat> shadowing_delta_from_convergence(const System& f, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  const IterateProfile profile = iterate_semigroup(f);
  if (!profile.limit_constant) return std::nullopt;
  const SystemMap constant = constant_map(f.size(), *profile.limit_constant);
  const Rat threshold = epsilon / 3;

  const int tail = std::max(profile.tail_len, 1);
  std::vector<Rat> rho_at(tail + 1, Rat(0));
  SystemMap fi = f.map;
  for (int m = 1; m <= tail; ++m) {
    rho_at[m] = rho_distance(f.space, fi, constant);
    if (m < tail) fi = compose(f.map, fi);
  }
  int big_n = tail;
  while (big_n > 1 && rho_at[big_n - 1] < threshold) --big_n;
  if (!(rho_at[big_n] < threshold)) return std::nullopt;  // cannot happen: rho at tail is 0

  const auto modulus = continuity_modulus(f, epsilon / (3 * big_n), big_n);
  return modulus ? *modulus : f.space.diameter() + 1;
}

}  // namespace dynlab
