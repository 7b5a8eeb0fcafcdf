#include "dynlab/metric_space.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace dynlab {

std::optional<int> FiniteMetricSpace::index_of(std::string_view label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels[i] == label) return i;
  }
  return std::nullopt;
}

int FiniteMetricSpace::require_index(std::string_view label) const {
  if (auto i = index_of(label)) return *i;
  throw std::invalid_argument("unknown point label: " + std::string(label));
}

Rat FiniteMetricSpace::diameter() const {
  Rat best = 0;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      best = std::max(best, at(i, j));
    }
  }
  return best;
}

Rat FiniteMetricSpace::min_positive_distance() const {
  std::optional<Rat> best;
  for (int i = 0; i < size(); ++i) {
    for (int j = i + 1; j < size(); ++j) {
      const Rat& d = at(i, j);
      if (d > 0 && (!best || d < *best)) best = d;
    }
  }
  if (!best) throw std::logic_error("min_positive_distance on a space without distinct points");
  return *best;
}

int max_point_budget() {
  if (const char* env = std::getenv("DYNLAB_MAX_POINTS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<int>(v);
  }
  return 4096;
}

namespace {

std::string pair_text(const FiniteMetricSpace& s, int i, int j) {
  return "(" + s.labels[i] + ", " + s.labels[j] + ")";
}

}  // namespace

std::optional<MetricViolation> validate_metric(const FiniteMetricSpace& space) {
  const size_t n = space.labels.size();
  if (space.dist.size() != n * n) {
    return MetricViolation{MetricViolation::Kind::Shape, -1, -1, -1,
                           "distance table is not a square over the point list"};
  }
  for (int i = 0; i < space.size(); ++i) {
    if (space.at(i, i) != 0) {
      return MetricViolation{MetricViolation::Kind::Diagonal, i, i, -1,
                             "d(x,x) != 0 at " + space.labels[i]};
    }
  }
  for (int i = 0; i < space.size(); ++i) {
    for (int j = i + 1; j < space.size(); ++j) {
      const Rat& d = space.at(i, j);
      if (d < 0) {
        return MetricViolation{MetricViolation::Kind::Negative, i, j, -1,
                               "negative distance at " + pair_text(space, i, j)};
      }
      if (d == 0) {
        return MetricViolation{MetricViolation::Kind::IndiscerniblePair, i, j, -1,
                               "distinct points at distance 0: " + pair_text(space, i, j)};
      }
      if (d != space.at(j, i)) {
        return MetricViolation{MetricViolation::Kind::Asymmetry, i, j, -1,
                               "asymmetric entries at " + pair_text(space, i, j)};
      }
    }
  }
  for (int j = 0; j < space.size(); ++j) {
    for (int i = 0; i < space.size(); ++i) {
      if (i == j) continue;
      for (int k = i + 1; k < space.size(); ++k) {
        if (k == j) continue;
        if (space.at(i, k) > space.at(i, j) + space.at(j, k)) {
          std::ostringstream msg;
          msg << "triangle inequality fails on (" << space.labels[i] << ", " << space.labels[j]
              << ", " << space.labels[k] << ")";
          return MetricViolation{MetricViolation::Kind::Triangle, i, j, k, msg.str()};
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<Rat> distance_spectrum(const FiniteMetricSpace& space) {
  std::set<Rat> values;
  values.insert(Rat(0));
  for (int i = 0; i < space.size(); ++i) {
    for (int j = i + 1; j < space.size(); ++j) {
      values.insert(space.at(i, j));
    }
  }
  return std::vector<Rat>(values.begin(), values.end());
}

PointSet ball(const FiniteMetricSpace& space, int center, const Rat& radius) {
  if (radius < 0) throw std::invalid_argument("ball radius must be nonnegative");
  PointSet out(space.size());
  for (int y = 0; y < space.size(); ++y) {
    if (space.at(center, y) < radius) out.set(y);
  }
  return out;
}

std::vector<std::vector<int>> h_components(const FiniteMetricSpace& space, const Rat& h) {
  if (h <= 0) throw std::invalid_argument("h must be positive");
  const int n = space.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (space.at(i, j) < h) parent[find(i)] = find(j);
    }
  }
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n, -1);
  for (int i = 0; i < n; ++i) {
    const int root = find(i);
    if (block_of[root] < 0) {
      block_of[root] = static_cast<int>(blocks.size());
      blocks.emplace_back();
    }
    blocks[block_of[root]].push_back(i);
  }
  return blocks;
}

namespace {

Rat partition_max_diameter(const FiniteMetricSpace& space, const std::vector<std::vector<int>>& blocks) {
  Rat best = 0;
  for (const auto& block : blocks) {
    for (size_t a = 0; a < block.size(); ++a) {
      for (size_t b = a + 1; b < block.size(); ++b) {
        best = std::max(best, space.at(block[a], block[b]));
      }
    }
  }
  return best;
}

std::optional<Rat> partition_separation(const FiniteMetricSpace& space,
                                        const std::vector<std::vector<int>>& blocks) {
  if (blocks.size() < 2) return std::nullopt;
  std::vector<int> block_of(space.size());
  for (size_t b = 0; b < blocks.size(); ++b) {
    for (int p : blocks[b]) block_of[p] = static_cast<int>(b);
  }
  std::optional<Rat> best;
  for (int i = 0; i < space.size(); ++i) {
    for (int j = i + 1; j < space.size(); ++j) {
      if (block_of[i] == block_of[j]) continue;
      if (!best || space.at(i, j) < *best) best = space.at(i, j);
    }
  }
  return best;
}

}  // namespace

std::optional<ClopenCover> clopen_cover(const FiniteMetricSpace& space, const Rat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  std::optional<ClopenCover> best;
  for (const Rat& h : distance_spectrum(space)) {
    if (h <= 0) continue;
    auto blocks = h_components(space, h);
    const Rat diam = partition_max_diameter(space, blocks);
    if (diam >= epsilon) continue;
    auto separation = partition_separation(space, blocks);
    ClopenCover candidate{std::move(blocks), separation, diam};
    // nullopt separation means a single block: no cross pairs, treated as
    // infinitely separated and preferred over any finite separation.
    bool better = false;
    if (!best) {
      better = true;
    } else if (!candidate.separation != !best->separation) {
      better = !candidate.separation;
    } else if (candidate.separation && best->separation &&
               *candidate.separation != *best->separation) {
      better = *candidate.separation > *best->separation;
    } else if (candidate.max_diameter != best->max_diameter) {
      better = candidate.max_diameter < best->max_diameter;
    } else {
      better = false;  // equal quality: keep the smaller h, scanned first
    }
    if (better) {
      best = std::move(candidate);
    }
  }
  return best;
}

}  // namespace dynlab
