#pragma once

#include <random>
#include <vector>

#include "mldlab/boxsolver.hpp"
#include "mldlab/singularity.hpp"

namespace mldlab::testsupport {

// Reference mld through plain rational arithmetic (ceiling form), kept
// independent of the incremental residue kernel in the library.
inline MldResult mld_reference(const CyclicQuotient& cq) {
  MldResult best;
  for (long j = 1; j <= cq.r; ++j) {
    Rational sum(0);
    for (long a : cq.weights) {
      Rational t(j * a, cq.r);
      sum += Rational(1) + t - Rational(rat_ceil(t));
    }
    if (j == 1 || sum < best.value) {
      best.value = sum;
      best.witnesses.assign(1, j);
    } else if (sum == best.value) {
      best.witnesses.push_back(j);
    }
  }
  return best;
}

inline long f_reference(const CyclicQuotient& cq, long n) {
  long total = 0;
  for (long a : cq.weights) total += rat_floor_long(Rational(n * a, cq.r));
  return total;
}

inline Rational random_unit_rational(std::mt19937& rng, long max_den) {
  std::uniform_int_distribution<long> dden(1, max_den);
  long q = dden(rng);
  std::uniform_int_distribution<long> dnum(0, q - 1);
  return Rational(dnum(rng), q);
}

// Random small floor system; about half are seeded from a sample point so
// that nonempty systems appear regularly.
inline FloorSystem random_system(std::mt19937& rng) {
  std::uniform_int_distribution<int> ddim(1, 3), dneq(1, 4), dcoin(0, 1), dten(0, 9);
  FloorSystem sys;
  sys.free_dim = ddim(rng);
  sys.ordered = dcoin(rng) == 1;
  if (dten(rng) < 3) sys.fixed.push_back(random_unit_rational(rng, 6));

  std::vector<long> ns;
  std::uniform_int_distribution<long> dn(2, 10);
  while (ns.size() < static_cast<std::size_t>(dneq(rng))) {
    long n = dn(rng);
    if (std::find(ns.begin(), ns.end(), n) == ns.end()) ns.push_back(n);
  }
  std::sort(ns.begin(), ns.end());

  const bool seeded = dcoin(rng) == 1;
  std::vector<Rational> sample;
  if (seeded) {
    for (int i = 0; i < sys.free_dim; ++i) sample.push_back(random_unit_rational(rng, 7));
    if (sys.ordered) std::sort(sample.begin(), sample.end());
  }
  for (long n : ns) {
    long rhs;
    if (seeded) {
      rhs = 0;
      for (const Rational& x : sample) rhs += rat_floor_long(x * Rational(n));
      for (const Rational& v : sys.fixed) rhs += rat_floor_long(v * Rational(n));
    } else {
      std::uniform_int_distribution<long> drhs(0, sys.free_dim * (n - 1));
      rhs = drhs(rng);
    }
    sys.equations.push_back({n, rhs});
  }

  if (dten(rng) < 2 && sys.total_dim() >= 2) {
    PairSumFilter f;
    f.i = 0;
    f.j = sys.total_dim() - 1;
    if (seeded && f.j < sys.free_dim) {
      f.sums.push_back(sample[static_cast<std::size_t>(f.i)] +
                       sample[static_cast<std::size_t>(f.j)]);
    } else {
      f.sums.push_back(random_unit_rational(rng, 8));
      f.sums.push_back(Rational(1) + random_unit_rational(rng, 8));
    }
    sys.pair_sum_filters.push_back(std::move(f));
  }
  return sys;
}

// Sample points of a box: the low corner, the midpoint, and a few interior
// rationals.
inline std::vector<std::vector<Rational>> box_samples(const Box& b, std::mt19937& rng) {
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> lo, mid;
  for (const Interval& iv : b.coords) {
    lo.push_back(iv.lo);
    mid.push_back(iv.midpoint());
  }
  out.push_back(lo);
  out.push_back(mid);
  std::uniform_int_distribution<long> dk(0, 6);
  for (int rep = 0; rep < 3; ++rep) {
    std::vector<Rational> p;
    for (const Interval& iv : b.coords)
      p.push_back(iv.lo + (iv.hi - iv.lo) * Rational(dk(rng), 7));
    out.push_back(std::move(p));
  }
  return out;
}

inline bool equations_hold(const FloorSystem& sys, const std::vector<Rational>& point) {
  for (const Equation& eq : sys.equations) {
    long total = 0;
    for (const Rational& x : point) total += rat_floor_long(x * Rational(eq.n));
    for (const Rational& v : sys.fixed) total += rat_floor_long(v * Rational(eq.n));
    if (total != eq.rhs) return false;
  }
  return true;
}

}  // namespace mldlab::testsupport
