#include "dynlab/pseudo_orbit.hpp"

#include <algorithm>
#include <deque>

#include "dynlab/builders.hpp"

namespace dynlab {

namespace {

void check_indices(const System& f, const std::vector<int>& seq) {
  for (int p : seq) {
    if (p < 0 || p >= f.size()) throw std::invalid_argument("point index out of range");
  }
}

// Tail length and cycle of the f-orbit of a single point.
struct PointOrbit {
  std::vector<int> tail;   // points strictly before the cycle
  std::vector<int> cycle;  // the eventual cycle, starting at its entry point
};

PointOrbit point_orbit(const System& f, int start) {
  std::vector<int> order;
  std::vector<int> seen_at(f.size(), -1);
  int x = start;
  while (seen_at[x] < 0) {
    seen_at[x] = static_cast<int>(order.size());
    order.push_back(x);
    x = f.step(x);
  }
  const int entry = seen_at[x];
  PointOrbit orbit;
  orbit.tail.assign(order.begin(), order.begin() + entry);
  orbit.cycle.assign(order.begin() + entry, order.end());
  return orbit;
}

}  // namespace

std::optional<size_t> validate_chain(const System& f, const std::vector<int>& seq,
                                     const Rat& delta) {
  if (seq.empty()) throw std::invalid_argument("validate_chain: empty sequence");
  check_indices(f, seq);
  for (size_t i = 0; i + 1 < seq.size(); ++i) {
    if (!(f.space.at(f.step(seq[i]), seq[i + 1]) < delta)) return i;
  }
  return std::nullopt;
}

std::optional<size_t> validate_lasso(const System& f, const LassoPseudoOrbit& po) {
  if (po.cycle.empty()) throw std::invalid_argument("validate_lasso: empty cycle");
  check_indices(f, po.stem);
  check_indices(f, po.cycle);
  // One full pass over stem plus cycle plus the wrap step covers every
  // distinct constraint of the periodic unrolling.
  const size_t total = po.stem.size() + po.cycle.size();
  for (size_t i = 0; i < total; ++i) {
    const int here = po.at(i);
    const int next = po.at(i + 1);
    if (!(f.space.at(f.step(here), next) < po.delta)) return i;
  }
  return std::nullopt;
}

Chain concatenate_chains(const Chain& c1, const Chain& c2) {
  if (c1.points.empty() || c2.points.empty()) {
    throw std::invalid_argument("concatenate_chains: empty chain");
  }
  if (c1.points.back() != c2.points.front()) {
    throw std::invalid_argument("concatenate_chains: endpoint mismatch");
  }
  if (c1.delta != c2.delta) {
    throw std::invalid_argument("concatenate_chains: delta mismatch");
  }
  Chain out{c1.points, c1.delta};
  out.points.insert(out.points.end(), c2.points.begin() + 1, c2.points.end());
  return out;
}

LassoPseudoOrbit extend_to_lasso(const System& f, const Chain& chain) {
  if (chain.points.empty()) throw std::invalid_argument("extend_to_lasso: empty chain");
  check_indices(f, chain.points);
  const PointOrbit orbit = point_orbit(f, chain.points.back());
  LassoPseudoOrbit po;
  po.delta = chain.delta;
  po.stem = chain.points;
  po.stem.pop_back();
  // orbit.tail begins with the chain's last point unless that point already
  // sits on its cycle, in which case the cycle starts there.
  po.stem.insert(po.stem.end(), orbit.tail.begin(), orbit.tail.end());
  po.cycle = orbit.cycle;
  return po;
}

std::optional<Chain> reverse_chain(const System& f, int x, int y, const Rat& delta) {
  if (x < 0 || x >= f.size() || y < 0 || y >= f.size()) {
    throw std::invalid_argument("reverse_chain: point index out of range");
  }
  if (delta <= 0) throw std::invalid_argument("reverse_chain: delta must be positive");
  const PointOrbit orbit = point_orbit(f, x);
  if (!orbit.tail.empty()) return std::nullopt;  // x not periodic
  const auto eta = continuity_modulus(f, delta, 1);
  if (eta && !(f.space.at(f.step(x), y) < *eta)) return std::nullopt;

  // Least multiple of x's period strictly greater than 2.
  const size_t period = orbit.cycle.size();
  size_t m = period;
  while (m <= 2) m += period;

  Chain chain;
  chain.delta = delta;
  chain.points.reserve(m);
  chain.points.push_back(y);
  int pos = f.step(f.step(x));
  for (size_t i = 1; i + 1 < m; ++i) {
    chain.points.push_back(pos);
    pos = f.step(pos);
  }
  chain.points.push_back(x);
  return chain;
}

std::optional<Chain> chain_through_component(const System& f, int p, int q, const Rat& delta) {
  if (p < 0 || p >= f.size() || q < 0 || q >= f.size()) {
    throw std::invalid_argument("chain_through_component: point index out of range");
  }
  if (delta <= 0) throw std::invalid_argument("chain_through_component: delta must be positive");
  // Permutations are exactly the recurrent finite systems.
  std::vector<bool> hit(f.size(), false);
  for (int i = 0; i < f.size(); ++i) hit[f.step(i)] = true;
  if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) return std::nullopt;

  const Rat half = delta / 2;
  // Spatial path from p to q with steps d < delta/2 (BFS, shortest).
  std::vector<int> spatial;
  if (p == q) {
    spatial = {p, p};
  } else {
    std::vector<int> parent(f.size(), -1);
    std::deque<int> queue{p};
    parent[p] = p;
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      if (u == q) break;
      for (int v = 0; v < f.size(); ++v) {
        if (parent[v] < 0 && f.space.at(u, v) < half) {
          parent[v] = u;
          queue.push_back(v);
        }
      }
    }
    if (parent[q] < 0) return std::nullopt;  // different (delta/2)-components
    for (int v = q; v != p; v = parent[v]) spatial.push_back(v);
    spatial.push_back(p);
    std::reverse(spatial.begin(), spatial.end());
  }

  // Splice each intermediate point's full period; the last point stands alone.
  Chain chain;
  chain.delta = delta;
  for (size_t j = 0; j + 1 < spatial.size(); ++j) {
    int pos = spatial[j];
    do {
      chain.points.push_back(pos);
      pos = f.step(pos);
    } while (pos != spatial[j]);
  }
  chain.points.push_back(spatial.back());
  return chain;
}

LassoPseudoOrbit block_pseudo_orbit(const System& f, const std::vector<int>& spatial_chain,
                                    int big_n, const Rat& delta) {
  if (spatial_chain.empty()) throw PreconditionError("block_pseudo_orbit: empty spatial chain");
  check_indices(f, spatial_chain);
  if (big_n < 1) throw PreconditionError("block_pseudo_orbit: N must be >= 1");
  const Rat half = delta / 2;
  for (size_t i = 0; i + 1 < spatial_chain.size(); ++i) {
    if (!(f.space.at(spatial_chain[i], spatial_chain[i + 1]) < half)) {
      throw PreconditionError("block_pseudo_orbit: spatial step " + std::to_string(i) +
                                  " not below delta/2",
                              i);
    }
  }
  const Rat rho = rho_distance(f.space, iterate_map(f.map, big_n), identity_map(f.size()));
  if (!(rho < half)) {
    throw PreconditionError("block_pseudo_orbit: rho(f^N, id) = " + rat_to_string(rho) +
                            " not below delta/2");
  }

  LassoPseudoOrbit po;
  po.delta = delta;
  for (size_t j = 0; j + 1 < spatial_chain.size(); ++j) {
    int pos = spatial_chain[j];
    for (int i = 0; i < big_n; ++i) {
      po.stem.push_back(pos);
      pos = f.step(pos);
    }
  }
  int pos = spatial_chain.back();
  for (int i = 0; i < big_n; ++i) {
    po.cycle.push_back(pos);
    pos = f.step(pos);
  }
  return po;
}

LassoPseudoOrbit bad_cantor_pseudo_orbit(int level, const Rat& delta) {
  if (level < 1) throw std::invalid_argument("bad_cantor_pseudo_orbit: level must be >= 1");
  Rat power(1);
  for (int i = 0; i < level; ++i) power /= 3;
  if (!(delta > power)) {
    throw PreconditionError("bad_cantor_pseudo_orbit: delta must exceed 3^-" +
                            std::to_string(level));
  }
  const System cantor = build_cantor(level);
  LassoPseudoOrbit po;
  po.delta = delta;
  Rat value = power;
  for (int i = 0; i <= level; ++i) {
    po.cycle.push_back(cantor.space.require_index(rat_to_string(value)));
    value *= 3;
  }
  return po;
}

StepGraph build_step_graph(const System& f, const Rat& delta) {
  if (delta <= 0) throw std::invalid_argument("build_step_graph: delta must be positive");
  StepGraph graph;
  graph.delta = delta;
  graph.successors.reserve(f.size());
  for (int x = 0; x < f.size(); ++x) {
    graph.successors.push_back(ball(f.space, f.step(x), delta));
  }
  return graph;
}

}  // namespace dynlab
