#include <doctest.h>

#include "dynlab/builders.hpp"
#include "dynlab/pseudo_orbit.hpp"
#include "oracles.hpp"

using namespace dynlab;
namespace oracle = dynlab::testing;

namespace {

// The 5-cycle 0 -> 2/5 -> 4/5 -> 1/5 -> 3/5 -> 0 on the 1/5-grid.
System five_cycle() {
  FiniteMetricSpace space = line_space({Rat(0), Rat(1, 5), Rat(2, 5), Rat(3, 5), Rat(4, 5)});
  SystemMap map;
  map.image = {2, 3, 4, 0, 1};
  return System{std::move(space), std::move(map)};
}

}  // namespace

TEST_CASE("validate_chain on the cantor map") {
  const System e2 = build_cantor(2);
  const auto seq = oracle::indices_of(e2.space, {"1/9", "1/3", "1"});
  CHECK(!validate_chain(e2, seq, Rat(1, 9)));  // exact orbit, slack 0

  const auto wrap = oracle::indices_of(e2.space, {"1", "1/9"});
  auto violation = validate_chain(e2, wrap, Rat(1, 9));
  REQUIRE(violation);
  CHECK(*violation == 0);  // d(t(1), 1/9) = 1/9, not strictly below 1/9
  CHECK(!validate_chain(e2, wrap, Rat(2, 9)));

  CHECK_THROWS_AS(validate_chain(e2, {}, Rat(1)), std::invalid_argument);
  CHECK_THROWS_AS(validate_chain(e2, {99}, Rat(1)), std::invalid_argument);
}

TEST_CASE("concatenate_chains and its error paths") {
  const System i4 = build_interval_grid(4);
  const Chain left{{0, 1}, Rat(1, 2)};
  const Chain right{{1, 2}, Rat(1, 2)};
  CHECK(concatenate_chains(left, right).points == std::vector<int>{0, 1, 2});

  const Chain singleton{{0}, Rat(1, 2)};
  CHECK(concatenate_chains(singleton, left).points == left.points);  // identity element

  CHECK_THROWS_AS(concatenate_chains(left, Chain{{2, 3}, Rat(1, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(concatenate_chains(left, Chain{{1, 2}, Rat(1, 3)}), std::invalid_argument);
}

TEST_CASE("extend_to_lasso follows the true orbit of the last point") {
  const System e2 = build_cantor(2);
  const auto lasso =
      extend_to_lasso(e2, Chain{oracle::indices_of(e2.space, {"1/9", "1/3", "1"}), Rat(2, 9)});
  CHECK(oracle::labels_of(e2.space, lasso.stem) == std::vector<std::string>{"1/9", "1/3", "1"});
  CHECK(oracle::labels_of(e2.space, lasso.cycle) == std::vector<std::string>{"0"});
  CHECK(!validate_lasso(e2, lasso));

  const System rot = build_circle_grid(4, Rat(1, 4));
  const auto orbit = extend_to_lasso(rot, Chain{{0}, Rat(1, 8)});
  CHECK(orbit.stem.empty());
  CHECK(oracle::labels_of(rot.space, orbit.cycle) ==
        std::vector<std::string>{"0", "1/4", "1/2", "3/4"});

  const System id = build_interval_grid(2);
  const auto fixed = extend_to_lasso(id, Chain{{1}, Rat(1)});
  CHECK(fixed.stem.empty());
  CHECK(fixed.cycle == std::vector<int>{1});
}

TEST_CASE("reverse_chain rebuilds the proof chain through the periodic orbit") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  const int x = rot.space.require_index("0");
  const int y = rot.space.require_index("1/4");
  const auto chain = reverse_chain(rot, x, y, Rat(1, 8));
  REQUIRE(chain);
  CHECK(oracle::labels_of(rot.space, chain->points) ==
        std::vector<std::string>{"1/4", "1/2", "3/4", "0"});
  CHECK(!validate_chain(rot, chain->points, Rat(1, 8)));

  // Fixed point of the identity: the least period multiple above 2 is 3.
  const System id = build_interval_grid(2);
  const auto loop = reverse_chain(id, 0, 0, Rat(1, 2));
  REQUIRE(loop);
  CHECK(loop->points == std::vector<int>{0, 0, 0});
  CHECK(!validate_chain(id, loop->points, Rat(1, 2)));

  // Non-periodic source point yields nothing.
  const System e2 = build_cantor(2);
  CHECK(!reverse_chain(e2, e2.space.require_index("1/9"), e2.space.require_index("1/3"),
                       Rat(1, 9)));
}

TEST_CASE("chain_through_component splices full periods along a spatial path") {
  const System cyc = five_cycle();
  const int p = cyc.space.require_index("0");
  const int q = cyc.space.require_index("1/5");
  const auto chain = chain_through_component(cyc, p, q, Rat(1, 2));
  REQUIRE(chain);
  CHECK(oracle::labels_of(cyc.space, chain->points) ==
        std::vector<std::string>{"0", "2/5", "4/5", "1/5", "3/5", "1/5"});
  CHECK(!validate_chain(cyc, chain->points, Rat(1, 2)));

  // p = q gives the full recurrence loop at p.
  const auto loop = chain_through_component(cyc, p, p, Rat(1, 2));
  REQUIRE(loop);
  CHECK(oracle::labels_of(cyc.space, loop->points) ==
        std::vector<std::string>{"0", "2/5", "4/5", "1/5", "3/5", "0"});
  CHECK(!validate_chain(cyc, loop->points, Rat(1, 2)));

  // Not a permutation: no construction.
  const System e2 = build_cantor(2);
  CHECK(!chain_through_component(e2, 0, 1, Rat(1, 2)));

  // Different (delta/2)-components: 0 and 1/5 sit 1/5 apart, delta/2 = 1/10.
  CHECK(!chain_through_component(cyc, p, q, Rat(1, 5)));
}

TEST_CASE("block_pseudo_orbit: the c_i = f^{i-jN}(a_j) construction") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  const auto spatial = oracle::indices_of(rot.space, {"0", "1/4", "1/2"});
  const auto po = block_pseudo_orbit(rot, spatial, 4, Rat(3, 5));
  CHECK(oracle::labels_of(rot.space, po.stem) ==
        std::vector<std::string>{"0", "1/4", "1/2", "3/4", "1/4", "1/2", "3/4", "0"});
  CHECK(oracle::labels_of(rot.space, po.cycle) ==
        std::vector<std::string>{"1/2", "3/4", "0", "1/4"});
  CHECK(!validate_lasso(rot, po));

  const System id = build_interval_grid(4);
  const auto pair = block_pseudo_orbit(id, {0, 1}, 1, Rat(3, 5));
  CHECK(pair.stem == std::vector<int>{0});
  CHECK(pair.cycle == std::vector<int>{1});
  CHECK(!validate_lasso(id, pair));

  // rho(f^N, id) too large for the requested delta (constant spatial chain,
  // so only the rho precondition can fail).
  CHECK_THROWS_AS(block_pseudo_orbit(rot, {0, 0}, 1, Rat(1, 4)), PreconditionError);
  // Spatial step out of range, with the offending index reported.
  try {
    block_pseudo_orbit(id, {0, 4}, 1, Rat(1, 2));
    FAIL("expected PreconditionError");
  } catch (const PreconditionError& error) {
    REQUIRE(error.index);
    CHECK(*error.index == 0);
  }
}

TEST_CASE("bad_cantor_pseudo_orbit is the powers-of-three cycle") {
  const System e2 = build_cantor(2);
  const auto po = bad_cantor_pseudo_orbit(2, Rat(2, 9));
  CHECK(po.stem.empty());
  CHECK(oracle::labels_of(e2.space, po.cycle) == std::vector<std::string>{"1/9", "1/3", "1"});
  CHECK(!validate_lasso(e2, po));

  const System e1 = build_cantor(1);
  const auto small = bad_cantor_pseudo_orbit(1, Rat(1, 2));
  CHECK(oracle::labels_of(e1.space, small.cycle) == std::vector<std::string>{"1/3", "1"});
  CHECK(!validate_lasso(e1, small));

  CHECK_THROWS_AS(bad_cantor_pseudo_orbit(2, Rat(1, 9)), PreconditionError);
}

TEST_CASE("build_step_graph: function edges always present, slack edges as computed") {
  const System e2 = build_cantor(2);
  const auto tight = build_step_graph(e2, Rat(1, 9));
  for (int x = 0; x < e2.size(); ++x) {
    CHECK(set_to_indices(tight.successors[x]) == std::vector<int>{e2.step(x)});
  }

  const auto loose = build_step_graph(e2, Rat(2, 9));
  const int one = e2.space.require_index("1");
  const int ninth = e2.space.require_index("1/9");
  CHECK(loose.successors[one].test(ninth));  // d(t(1), 1/9) = 1/9 < 2/9
  for (int x = 0; x < e2.size(); ++x) {
    for (int y = 0; y < e2.size(); ++y) {
      CHECK(loose.successors[x].test(y) == (e2.space.at(e2.step(x), y) < Rat(2, 9)));
    }
  }

  const auto complete = build_step_graph(e2, e2.space.diameter() + 1);
  for (int x = 0; x < e2.size(); ++x) CHECK(complete.successors[x].count() == 8);
}

TEST_CASE("walk-pseudo-orbit duality and edge monotonicity on random systems") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const System system = random_system(6, seed, seed % 2 == 0);
    const auto candidates = distance_spectrum(system.space);
    for (const Rat& delta : candidates) {
      if (delta <= 0) continue;
      const auto graph = build_step_graph(system, delta);
      // Duality: a sequence validates iff it is a walk.
      for (uint64_t tweak = 0; tweak < 20; ++tweak) {
        std::vector<int> seq;
        uint64_t state = seed * 1000 + tweak;
        for (int len = 0; len < 4; ++len) {
          state = state * 6364136223846793005ull + 1442695040888963407ull;
          seq.push_back(static_cast<int>((state >> 33) % system.size()));
        }
        bool is_walk = true;
        for (size_t i = 0; i + 1 < seq.size(); ++i) {
          if (!graph.successors[seq[i]].test(seq[i + 1])) is_walk = false;
        }
        CHECK(is_walk == !validate_chain(system, seq, delta));
      }
    }
    // Monotonicity of edges in delta.
    for (size_t i = 1; i + 1 < candidates.size(); ++i) {
      const auto lo = build_step_graph(system, candidates[i]);
      const auto hi = build_step_graph(system, candidates[i + 1]);
      for (int x = 0; x < system.size(); ++x) {
        CHECK((lo.successors[x] & hi.successors[x]) == lo.successors[x]);
      }
    }
  }
}

TEST_CASE("truncations of valid lasso unrollings validate as chains") {
  const System e2 = build_cantor(2);
  const auto po = bad_cantor_pseudo_orbit(2, Rat(2, 9));
  for (size_t len = 1; len <= 9; ++len) {
    std::vector<int> prefix;
    for (size_t i = 0; i < len; ++i) prefix.push_back(po.at(i));
    CHECK(!validate_chain(e2, prefix, po.delta));
  }
}
