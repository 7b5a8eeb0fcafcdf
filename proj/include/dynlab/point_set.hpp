#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstdint>
#include <vector>

namespace dynlab {

/// Dense set of point indices over a fixed finite space.
using PointSet = boost::dynamic_bitset<uint64_t>;

inline PointSet image_of(const std::vector<int>& image_table, const PointSet& set) {
  PointSet out(set.size());
  for (size_t i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) {
    out.set(static_cast<size_t>(image_table[i]));
  }
  return out;
}

inline std::vector<int> set_to_indices(const PointSet& set) {
  std::vector<int> out;
  out.reserve(set.count());
  for (size_t i = set.find_first(); i != PointSet::npos; i = set.find_next(i)) {
    out.push_back(static_cast<int>(i));
  }
  return out;
}

struct PointSetHash {
  size_t operator()(const PointSet& set) const {
    std::vector<uint64_t> blocks;
    blocks.reserve(set.num_blocks());
    boost::to_block_range(set, std::back_inserter(blocks));
    uint64_t h = 1469598103934665603ull;
    for (uint64_t b : blocks) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

}  // namespace dynlab
