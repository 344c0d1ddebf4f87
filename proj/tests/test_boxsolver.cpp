#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mldlab/boxsolver.hpp"
#include "mldlab/errors.hpp"
#include "test_support.hpp"

using namespace mldlab;

namespace {

Interval iv(long nl, long dl, long nh, long dh) {
  return Interval(Rational(nl, dl), Rational(nh, dh));
}

Box box(std::vector<Interval> coords) { return Box{std::move(coords)}; }

}  // namespace

TEST_CASE("interval construction enforces 0 <= lo < hi <= 1") {
  CHECK_THROWS_AS(Interval(Rational(1, 2), Rational(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(Interval(Rational(2, 3), Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(Interval(Rational(-1, 3), Rational(1, 3)), std::invalid_argument);
  CHECK_THROWS_AS(Interval(Rational(1, 2), Rational(3, 2)), std::invalid_argument);
}

TEST_CASE("refine_step reproduces the documented first induction states") {
  SUBCASE("five ordered coordinates, n=2, rhs=1") {
    BoxSet v2 = refine_step(seed_boxset(5), 2, 1, {});
    std::erase_if(v2.boxes, [](const Box& b) { return !ordered_feasible(b); });
    v2 = boxset_normalize(v2);
    REQUIRE(v2.boxes.size() == 1);
    const Box& b = v2.boxes.front();
    for (int i = 0; i < 4; ++i) CHECK(b.coords[i] == iv(0, 1, 1, 2));
    CHECK(b.coords[4] == iv(1, 2, 1, 1));
  }
  SUBCASE("one coordinate, n=3, rhs=0") {
    BoxSet out = refine_step(seed_boxset(1), 3, 0, {});
    REQUIRE(out.boxes.size() == 1);
    CHECK(out.boxes.front().coords.front() == iv(0, 1, 1, 3));
  }
  SUBCASE("no sub-box can reach the target") {
    BoxSet bs;
    bs.dim = 1;
    bs.boxes.push_back(box({iv(0, 1, 1, 3)}));
    CHECK(refine_step(bs, 2, 1, {}).empty());
  }
}

TEST_CASE("refinement is conservative") {
  // Output boxes tile a subset of the input, and any input point satisfying
  // the new equation stays covered.
  std::mt19937 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    std::uniform_int_distribution<int> ddim(1, 3);
    std::uniform_int_distribution<long> dn(2, 9);
    BoxSet bs = seed_boxset(ddim(rng));
    long n1 = dn(rng), n2 = dn(rng);
    bs = refine_step(bs, n1, ddim(rng), {});
    long rhs = ddim(rng);
    BoxSet refined = refine_step(bs, n2, rhs, {});
    for (const Box& b : refined.boxes)
      for (const auto& p : testsupport::box_samples(b, rng)) CHECK(bs.contains(p));
    for (const Box& b : bs.boxes) {
      for (const auto& p : testsupport::box_samples(b, rng)) {
        long total = 0;
        for (const Rational& x : p) total += rat_floor_long(x * Rational(n2));
        if (total == rhs) CHECK(refined.contains(p));
      }
    }
  }
}

TEST_CASE("refine_step keeps boxes disjoint and floor-constant") {
  std::mt19937 rng(22);
  BoxSet bs = seed_boxset(2);
  for (long n : {2L, 3L, 5L}) {
    bs = refine_step(bs, n, 2, {});
    for (std::size_t i = 0; i < bs.boxes.size(); ++i) {
      for (const Interval& c : bs.boxes[i].coords) {
        long f = rat_floor_long(c.lo * Rational(n));
        CHECK(c.hi * Rational(n) <= Rational(f + 1));
      }
      for (std::size_t j = i + 1; j < bs.boxes.size(); ++j) {
        bool disjoint = false;
        for (std::size_t k = 0; k < bs.boxes[i].coords.size(); ++k) {
          const Interval& a = bs.boxes[i].coords[k];
          const Interval&ب = bs.boxes[j].coords[k];
          if (a.hi <= ب.lo || ب.hi <= a.lo) disjoint = true;
        }
        CHECK(disjoint);
      }
    }
  }
}

TEST_CASE("ordered_feasible") {
  CHECK(ordered_feasible(box({iv(0, 1, 1, 2), iv(1, 2, 1, 1)})));
  CHECK_FALSE(ordered_feasible(box({iv(1, 2, 1, 1), iv(0, 1, 1, 2)})));
  CHECK(ordered_feasible(box({iv(0, 1, 1, 1), iv(0, 1, 1, 1)})));
}

TEST_CASE("pair_sum_feasible") {
  Box b = box({iv(0, 1, 1, 2), iv(0, 1, 1, 2)});
  CHECK(pair_sum_feasible(b, {}, 0, 1, Rational(1, 2)));
  CHECK_FALSE(pair_sum_feasible(b, {}, 0, 1, Rational(1)));  // sup of sums, never attained
  Box c = box({iv(1, 3, 2, 5), iv(1, 3, 2, 5)});
  CHECK_FALSE(pair_sum_feasible(c, {}, 0, 1, Rational(1, 2)));

  SUBCASE("fixed coordinates behave as degenerate closed intervals") {
    std::vector<Rational> fixed{Rational(1, 4), Rational(1, 4)};
    Box d = box({iv(0, 1, 1, 4)});
    CHECK(pair_sum_feasible(d, fixed, 0, 1, Rational(3, 8)));   // [1/4, 1/2)
    CHECK_FALSE(pair_sum_feasible(d, fixed, 0, 1, Rational(1, 2)));
    CHECK(pair_sum_feasible(d, fixed, 1, 2, Rational(1, 2)));   // exactly attained
    CHECK_FALSE(pair_sum_feasible(d, fixed, 1, 2, Rational(1, 3)));
  }
}

TEST_CASE("boxset_normalize") {
  SUBCASE("merges abutting boxes differing in one coordinate") {
    BoxSet bs;
    bs.dim = 2;
    bs.boxes.push_back(box({iv(0, 1, 1, 3), iv(0, 1, 1, 1)}));
    bs.boxes.push_back(box({iv(1, 3, 1, 2), iv(0, 1, 1, 1)}));
    BoxSet norm = boxset_normalize(bs);
    REQUIRE(norm.boxes.size() == 1);
    CHECK(norm.boxes.front() == box({iv(0, 1, 1, 2), iv(0, 1, 1, 1)}));
    CHECK(boxset_normalize(norm) == norm);  // idempotent
  }
  SUBCASE("empty set") {
    BoxSet bs;
    bs.dim = 3;
    CHECK(boxset_normalize(bs).empty());
  }
  SUBCASE("overlap is an invariant breach") {
    BoxSet bs;
    bs.dim = 1;
    bs.boxes.push_back(box({iv(0, 1, 1, 2)}));
    bs.boxes.push_back(box({iv(1, 3, 2, 3)}));
    CHECK_THROWS_AS(boxset_normalize(bs), InvariantError);
  }
  SUBCASE("sorted output") {
    BoxSet bs;
    bs.dim = 1;
    bs.boxes.push_back(box({iv(1, 2, 2, 3)}));
    bs.boxes.push_back(box({iv(0, 1, 1, 4)}));
    BoxSet norm = boxset_normalize(bs);
    CHECK(norm.boxes.front().coords.front().lo == Rational(0));
  }
}

TEST_CASE("solve result is identical for per-step and final ordering filters") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 120; ++trial) {
    FloorSystem sys = testsupport::random_system(rng);
    BoxSet a = solve(sys, {OrderingStage::kPerStep, 1});
    BoxSet b = solve(sys, {OrderingStage::kFinal, 1});
    CHECK(a == b);
  }
}

TEST_CASE("solve with a skip modulus rejects conflicting equations") {
  FloorSystem sys;
  sys.free_dim = 2;
  sys.skip_modulus = 3;
  sys.equations = {{2, 1}, {6, 4}};
  CHECK_THROWS_AS(validate_system(sys), std::invalid_argument);
}

TEST_CASE("validate_system rejects structural violations") {
  FloorSystem sys;
  sys.free_dim = 0;
  CHECK_THROWS_AS(validate_system(sys), std::invalid_argument);
  sys.free_dim = 2;
  sys.equations = {{3, 1}, {3, 2}};
  CHECK_THROWS_AS(validate_system(sys), std::invalid_argument);
  sys.equations = {{3, 1}};
  sys.fixed = {Rational(1)};
  CHECK_THROWS_AS(validate_system(sys), std::invalid_argument);
  sys.fixed = {Rational(1, 2)};
  sys.pair_sum_filters = {{0, 5, {Rational(1, 2)}}};
  CHECK_THROWS_AS(validate_system(sys), std::invalid_argument);
  sys.pair_sum_filters = {{0, 2, {Rational(1, 2)}}};
  CHECK_NOTHROW(validate_system(sys));
}

TEST_CASE("oracle grid holds the unit-fraction lattice plus gap midpoints") {
  auto grid = oracle_grid(4);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  for (const Rational& g : grid) {
    CHECK(g >= Rational(0));
    CHECK(g < Rational(1));
  }
  auto has = [&](long p, long q) {
    return std::find(grid.begin(), grid.end(), Rational(p, q)) != grid.end();
  };
  CHECK(has(1, 2));
  CHECK(has(2, 3));
  CHECK(has(3, 4));
  CHECK(has(7, 8));   // midpoint of [3/4, 1)
  CHECK(has(7, 24));  // midpoint of [1/4, 1/3)
}

TEST_CASE("oracle on a one-dimensional system") {
  FloorSystem sys;
  sys.free_dim = 1;
  sys.equations = {{2, 1}};
  auto pts = brute_oracle(sys, 4);
  CHECK(!pts.empty());
  for (const auto& p : pts) {
    CHECK(p.front() >= Rational(1, 2));
    CHECK(p.front() < Rational(1));
  }
  auto has = [&](const Rational& v) {
    return std::any_of(pts.begin(), pts.end(),
                       [&](const auto& p) { return p.front() == v; });
  };
  CHECK(has(Rational(1, 2)));
  CHECK(has(Rational(3, 4)));
  CHECK(has(Rational(2, 3)));
}
