#include <doctest.h>

#include "dynlab/builders.hpp"
#include "dynlab/pseudo_orbit.hpp"
#include "dynlab/recurrence.hpp"
#include "oracles.hpp"

using namespace dynlab;
namespace oracle = dynlab::testing;

TEST_CASE("periodic_points: cycles only") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  CHECK(periodic_points(rot.map).count() == 4);

  const System e2 = build_cantor(2);
  CHECK(oracle::labels_of(e2.space, set_to_indices(periodic_points(e2.map))) ==
        std::vector<std::string>{"0"});

  const System shift = build_shift_to_limit(2);
  CHECK(oracle::labels_of(shift.space, set_to_indices(periodic_points(shift.map))) ==
        std::vector<std::string>{"0"});
}

TEST_CASE("recurrence_report: permutations are exactly the recurrent systems") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  auto report = recurrence_report(rot);
  CHECK(report.is_recurrent_system);
  REQUIRE(report.period);
  CHECK(*report.period == 4);
  // At eps = 1/4 (least spectrum value) the only return is the full period.
  REQUIRE(report.epsilons.front() == Rat(1, 4));
  for (int x = 0; x < rot.size(); ++x) {
    REQUIRE(report.return_times.front()[x]);
    CHECK(*report.return_times.front()[x] == 4);
  }

  const System e2 = build_cantor(2);
  report = recurrence_report(e2);
  CHECK(!report.is_recurrent_system);
  CHECK(!report.period);
  const int ninth = e2.space.require_index("1/9");
  REQUIRE(report.epsilons.front() == Rat(1, 9));
  CHECK(!report.return_times.front()[ninth]);  // 1/9 never returns that close
  const int zero = e2.space.require_index("0");
  CHECK(*report.return_times.front()[zero] == 1);

  const System id = build_interval_grid(3);
  report = recurrence_report(id);
  CHECK(report.is_recurrent_system);
  CHECK(*report.period == 1);
  for (const auto& row : report.return_times) {
    for (const auto& cell : row) CHECK(*cell == 1);
  }
}

TEST_CASE("rigidity_defect frozen values") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  CHECK(rigidity_defect(rot, 4) == 0);
  CHECK(rigidity_defect(rot, 3) == Rat(1, 4));

  const System e1 = build_cantor(1);
  CHECK(rigidity_defect(e1, 10) == Rat(1));  // t^n sends 1 to 0 forever

  const System id = build_interval_grid(4);
  CHECK(rigidity_defect(id, 1) == 0);

  CHECK_THROWS_AS(rigidity_defect(id, 0), std::invalid_argument);
}

TEST_CASE("almost_periodic_bound: rotation, identity, and the transient case") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  auto bound = almost_periodic_bound(rot, 0, Rat(1, 8));
  REQUIRE(bound);
  CHECK(*bound == 4);

  const System id = build_interval_grid(4);
  for (int x = 0; x < id.size(); ++x) {
    CHECK(*almost_periodic_bound(id, x, Rat(1, 100)) == 1);
  }

  // Orbit of 1/3 under t on E_1: 1/3, 1, 0, 0, ... Returns at indices 0 and
  // >= 2 (d(0, 1/3) = 1/3 < 1/2), so the longest wait is one step.
  const System e1 = build_cantor(1);
  bound = almost_periodic_bound(e1, e1.space.require_index("1/3"), Rat(1, 2));
  REQUIRE(bound);
  CHECK(*bound == 2);

  // Same orbit at eps = 1/3: the tail never re-enters the ball.
  CHECK(!almost_periodic_bound(e1, e1.space.require_index("1/3"), Rat(1, 3)));
}

TEST_CASE("almost_periodic_bound equals the cycle length on a fine-eps cycle point") {
  for (uint64_t seed = 1; seed <= 8; ++seed) {
    const System perm = random_system(6, seed, true);
    const auto profile = iterate_semigroup(perm);
    for (int x = 0; x < perm.size(); ++x) {
      // Cycle length of x within the permutation.
      int len = 1;
      for (int pos = perm.step(x); pos != x; pos = perm.step(pos)) ++len;
      const auto bound = almost_periodic_bound(perm, x, perm.space.min_positive_distance());
      REQUIRE(bound);
      CHECK(*bound == len);
    }
  }
}

TEST_CASE("chain_reach frozen values on the cantor map") {
  const System e2 = build_cantor(2);
  const int ninth = e2.space.require_index("1/9");

  auto reach = chain_reach(e2, ninth, Rat(1, 9));
  CHECK(oracle::labels_of(e2.space, set_to_indices(reach)) ==
        std::vector<std::string>{"0", "1/3", "1"});

  reach = chain_reach(e2, ninth, Rat(2, 9));
  CHECK(reach.count() == 8);  // everything within 2/9 of images chains onward

  const System rot = build_circle_grid(4, Rat(1, 4));
  CHECK(chain_reach(rot, 0, Rat(1, 100)).count() == 4);

  // The all-delta core is the forward orbit.
  CHECK(oracle::labels_of(e2.space, set_to_indices(chain_accessible_core(e2, ninth))) ==
        std::vector<std::string>{"0", "1/3", "1"});
}

TEST_CASE("chain_reach matches the closure oracle") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const System system = random_system(7, seed, seed % 2 == 1);
    for (const Rat& delta : distance_spectrum(system.space)) {
      if (delta <= 0) continue;
      const auto graph = build_step_graph(system, delta);
      const auto closure = oracle::reach_closure(graph.successors);
      for (int p = 0; p < system.size(); ++p) {
        const auto reach = chain_reach(system, p, delta);
        for (int q = 0; q < system.size(); ++q) {
          CHECK(reach.test(q) == closure[p][q]);
        }
      }
    }
  }
}

TEST_CASE("chain_classes frozen cases") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  auto classes = chain_classes(rot, Rat(1, 8));
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].members.size() == 4);
  CHECK(classes[0].minimal);
  CHECK(classes[0].transitive);

  const System e2 = build_cantor(2);
  classes = chain_classes(e2, Rat(1, 9));
  REQUIRE(classes.size() == 1);
  CHECK(oracle::labels_of(e2.space, classes[0].members) == std::vector<std::string>{"0"});
  CHECK(classes[0].minimal);

  // Identity on E_1 at delta = 1/2: the step relation chains the whole
  // space into one class, which is not a single cycle.
  const System e1 = build_cantor(1);
  const System id1{e1.space, identity_map(4)};
  classes = chain_classes(id1, Rat(1, 2));
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].members.size() == 4);
  CHECK(!classes[0].minimal);
}

TEST_CASE("chain_classes agree with the mutual-reachability oracle") {
  for (uint64_t seed = 1; seed <= 6; ++seed) {
    const System system = random_system(6, seed * 13, seed % 2 == 0);
    for (const Rat& delta : distance_spectrum(system.space)) {
      if (delta <= 0) continue;
      const auto graph = build_step_graph(system, delta);
      const auto closure = oracle::reach_closure(graph.successors);
      const auto classes = chain_classes(system, delta);
      std::vector<int> class_of(system.size(), -1);
      for (size_t c = 0; c < classes.size(); ++c)
        for (int p : classes[c].members) class_of[p] = static_cast<int>(c);
      for (int p = 0; p < system.size(); ++p) {
        for (int q = 0; q < system.size(); ++q) {
          const bool same_class = class_of[p] >= 0 && class_of[p] == class_of[q];
          const bool mutual = closure[p][q] && closure[q][p] && closure[p][p] && closure[q][q];
          CHECK(same_class == mutual);
        }
      }
    }
  }
}

TEST_CASE("classify_system assembles the expected notes") {
  const System rot = build_circle_grid(4, Rat(1, 4));
  auto report = classify_system(rot);
  CHECK(report.is_perm);
  REQUIRE(report.period);
  CHECK(*report.period == 4);
  CHECK(report.defect == 0);
  bool notes_mention_permutation = false;
  for (const auto& note : report.theorem_notes) {
    if (note.find("permutation") != std::string::npos) notes_mention_permutation = true;
  }
  CHECK(notes_mention_permutation);

  const System e2 = build_cantor(2);
  report = classify_system(e2);
  CHECK(!report.is_perm);
  CHECK(report.iterates.limit_constant);
  bool notes_mention_constant = false;
  for (const auto& note : report.theorem_notes) {
    if (note.find("constant") != std::string::npos) notes_mention_constant = true;
  }
  CHECK(notes_mention_constant);

  const System shift = build_shift_to_limit(3);
  report = classify_system(shift);
  CHECK(report.defect == Rat(1));
  CHECK(oracle::labels_of(shift.space, set_to_indices(report.iterates.eventual_image)) ==
        std::vector<std::string>{"0"});
}

TEST_CASE("recurrence equivalences on random systems") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    const System system = random_system(6, seed * 7 + 1, seed % 2 == 0);
    const bool perm = is_permutation(system.map);
    CHECK(recurrence_report(system).is_recurrent_system == perm);
    CHECK((periodic_points(system.map).count() == static_cast<size_t>(system.size())) == perm);
    if (perm) {
      const auto profile = iterate_semigroup(system);
      CHECK(rigidity_defect(system, profile.cycle_len.convert_to<long long>()) == 0);
    }
  }
}
