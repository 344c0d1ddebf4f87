#pragma once

#include <optional>
#include <vector>

#include "mldlab/rational.hpp"

namespace mldlab {

// Half-open interval [lo, hi) inside [0, 1].
struct Interval {
  Rational lo, hi;

  Interval() = default;
  Interval(Rational lo_, Rational hi_);

  bool contains(const Rational& x) const { return lo <= x && x < hi; }
  Rational midpoint() const { return (lo + hi) / Rational(2); }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// Product of half-open intervals, one per free coordinate.  Once an
// equation with index n has been applied, floor(n*x) is constant on every
// coordinate interval; refine_step maintains that.
struct Box {
  std::vector<Interval> coords;

  bool contains(const std::vector<Rational>& point) const;
  friend bool operator==(const Box&, const Box&) = default;
};

bool box_less(const Box& a, const Box& b);  // lexicographic by (lo vector, hi vector)

// Disjoint union of equal-dimension boxes; the solver's representation of a
// floor-equation solution space.
struct BoxSet {
  int dim = 0;
  std::vector<Box> boxes;

  bool empty() const { return boxes.empty(); }
  bool contains(const std::vector<Rational>& point) const;
  friend bool operator==(const BoxSet&, const BoxSet&) = default;
};

BoxSet seed_boxset(int dim);  // the full cube [0,1)^dim

struct Equation {
  long n = 0;
  long rhs = 0;
  friend bool operator==(const Equation&, const Equation&) = default;
};

// Coordinate indices cover free coordinates first, then fixed ones.
struct PairSumFilter {
  int i = 0;
  int j = 0;
  std::vector<Rational> sums;
};

// A floor-sum constraint program over [0,1)^free_dim:
//   sum_i floor(n x_i) + sum_f floor(n v_f) = rhs   for each equation (n, rhs),
// optionally with a nondecreasing-order requirement on the free coordinates
// and a disjunctive pair-sum side constraint applied to the final boxes.
struct FloorSystem {
  int free_dim = 1;
  std::vector<Rational> fixed;          // values in [0,1), appended after free coords
  std::optional<long> skip_modulus;     // q >= 2; every equation index must avoid q | n
  bool ordered = false;
  std::vector<Equation> equations;      // strictly increasing n
  std::vector<PairSumFilter> pair_sum_filters;

  int total_dim() const { return free_dim + static_cast<int>(fixed.size()); }
};

// Throws std::invalid_argument on any structural violation (unsorted or
// duplicate equation indices, skip-modulus conflicts, fixed values outside
// [0,1), bad filter indices).
void validate_system(const FloorSystem& sys);

// Splits every coordinate interval at the interior points c with n*c an
// integer and keeps exactly the sub-boxes whose free floor sum plus the
// fixed contribution equals rhs.  Output boxes are floor-constant for n.
BoxSet refine_step(const BoxSet& bs, long n, long rhs, const std::vector<Rational>& fixed,
                   int jobs = 1);

// True iff the box admits a point with x_1 <= x_2 <= ... <= x_d (greedy:
// t_1 = lo_1, t_i = max(t_{i-1}, lo_i), feasible iff t_i < hi_i throughout).
bool ordered_feasible(const Box& b);

// True iff some point of the box (with fixed coordinates treated as
// degenerate closed intervals) satisfies x_i + x_j = s.  For two half-open
// factors this is lo_i + lo_j <= s < hi_i + hi_j.  Never returns false for
// a box containing a point with the required sum, so filtering with it
// keeps emptiness proofs sound.
bool pair_sum_feasible(const Box& b, const std::vector<Rational>& fixed, int i, int j,
                       const Rational& s);

// Disjunction over the system's filters and their allowed sums.
bool pair_sum_filters_feasible(const Box& b, const FloorSystem& sys);

enum class OrderingStage { kPerStep, kFinal };

struct SolveOptions {
  OrderingStage ordering_stage = OrderingStage::kPerStep;
  int jobs = 1;
};

// Applies the equations in increasing n to the seed cube, filtering by
// ordered feasibility (per step by default), then applies the pair-sum
// filters to the final boxes and normalizes.  Every point of every output
// box satisfies every equation exactly.
BoxSet solve(const FloorSystem& sys, const SolveOptions& opts = {});

// Merges boxes that differ in exactly one coordinate with abutting
// intervals there, then sorts lexicographically.  Idempotent.  Throws
// InvariantError if the input boxes overlap.
BoxSet boxset_normalize(const BoxSet& bs);

// Exhaustive grid oracle: tests every tuple with coordinates drawn from
// { p/q : q <= max_denominator, 0 <= p < q } plus the midpoints between
// consecutive grid values (and between the last value and 1), returning
// the tuples that satisfy every equation, the ordering, and the pair-sum
// constraint exactly.  Independent of the subdivision path above.
std::vector<std::vector<Rational>> brute_oracle(const FloorSystem& sys, long max_denominator,
                                                int jobs = 1);

// The grid used by brute_oracle, sorted ascending.
std::vector<Rational> oracle_grid(long max_denominator);

}  // namespace mldlab
