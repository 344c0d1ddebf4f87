#include "mldlab/boxsolver.hpp"

#include <algorithm>
#include <cassert>
#include <set>

#include "mldlab/errors.hpp"
#include "mldlab/parallel.hpp"

namespace mldlab {

Interval::Interval(Rational lo_, Rational hi_) : lo(std::move(lo_)), hi(std::move(hi_)) {
  if (lo < Rational(0) || !(lo < hi) || hi > Rational(1))
    throw std::invalid_argument("Interval: need 0 <= lo < hi <= 1");
}

bool Box::contains(const std::vector<Rational>& point) const {
  if (point.size() != coords.size()) return false;
  for (std::size_t i = 0; i < coords.size(); ++i)
    if (!coords[i].contains(point[i])) return false;
  return true;
}

bool box_less(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < std::min(a.coords.size(), b.coords.size()); ++i) {
    if (a.coords[i].lo != b.coords[i].lo) return a.coords[i].lo < b.coords[i].lo;
  }
  for (std::size_t i = 0; i < std::min(a.coords.size(), b.coords.size()); ++i) {
    if (a.coords[i].hi != b.coords[i].hi) return a.coords[i].hi < b.coords[i].hi;
  }
  return a.coords.size() < b.coords.size();
}

bool BoxSet::contains(const std::vector<Rational>& point) const {
  return std::any_of(boxes.begin(), boxes.end(),
                     [&](const Box& b) { return b.contains(point); });
}

BoxSet seed_boxset(int dim) {
  if (dim < 1) throw std::invalid_argument("seed_boxset: dim must be >= 1");
  BoxSet bs;
  bs.dim = dim;
  Box b;
  b.coords.assign(dim, Interval(Rational(0), Rational(1)));
  bs.boxes.push_back(std::move(b));
  return bs;
}

void validate_system(const FloorSystem& sys) {
  if (sys.free_dim < 1) throw std::invalid_argument("FloorSystem: free_dim must be >= 1");
  for (const Rational& v : sys.fixed)
    if (v < Rational(0) || v >= Rational(1))
      throw std::invalid_argument("FloorSystem: fixed values must lie in [0,1)");
  if (sys.skip_modulus && *sys.skip_modulus < 2)
    throw std::invalid_argument("FloorSystem: skip_modulus must be >= 2");
  long prev = 0;
  for (const Equation& eq : sys.equations) {
    if (eq.n < 1) throw std::invalid_argument("FloorSystem: equation index must be positive");
    if (eq.n <= prev)
      throw std::invalid_argument("FloorSystem: equation indices must be strictly increasing");
    if (sys.skip_modulus && eq.n % *sys.skip_modulus == 0)
      throw std::invalid_argument("FloorSystem: equation index conflicts with skip modulus");
    prev = eq.n;
  }
  for (const PairSumFilter& f : sys.pair_sum_filters) {
    if (f.i == f.j || f.i < 0 || f.j < 0 || f.i >= sys.total_dim() || f.j >= sys.total_dim())
      throw std::invalid_argument("FloorSystem: pair-sum filter indices out of range");
    if (f.sums.empty())
      throw std::invalid_argument("FloorSystem: pair-sum filter needs at least one sum");
  }
}

namespace {

struct Piece {
  Interval iv;
  long floor_value;
};

// Split [lo,hi) at every interior multiple of 1/n.  Each resulting piece has
// constant floor(n*x); the piece starting at a breakpoint m/n carries value m.
std::vector<Piece> split_at_multiples(const Interval& iv, long n) {
  const Rational nr(n);
  long first = rat_floor_long(iv.lo * nr) + 1;
  Rational hi_n = iv.hi * nr;
  long last = rat_floor_long(hi_n);
  if (hi_n == Rational(last)) --last;  // hi itself is not interior
  std::vector<Piece> pieces;
  if (first > last) {
    pieces.push_back({iv, rat_floor_long(iv.lo * nr)});
    return pieces;
  }
  pieces.reserve(static_cast<std::size_t>(last - first + 2));
  Rational prev = iv.lo;
  long prev_floor = rat_floor_long(iv.lo * nr);
  for (long m = first; m <= last; ++m) {
    Rational cut(m, n);
    pieces.push_back({Interval(prev, cut), prev_floor});
    prev = cut;
    prev_floor = m;
  }
  pieces.push_back({Interval(prev, iv.hi), prev_floor});
  return pieces;
}

long fixed_floor_sum(const std::vector<Rational>& fixed, long n) {
  long s = 0;
  for (const Rational& v : fixed) s += rat_floor_long(v * Rational(n));
  return s;
}

void refine_box(const Box& box, long n, long target, std::vector<Box>& out) {
  const std::size_t d = box.coords.size();
  std::vector<std::vector<Piece>> pieces(d);
  for (std::size_t i = 0; i < d; ++i) pieces[i] = split_at_multiples(box.coords[i], n);

  // Partial-sum bounds over the remaining coordinates prune the product walk.
  std::vector<long> min_suffix(d + 1, 0), max_suffix(d + 1, 0);
  for (std::size_t i = d; i-- > 0;) {
    long mn = pieces[i].front().floor_value, mx = mn;
    for (const Piece& p : pieces[i]) {
      mn = std::min(mn, p.floor_value);
      mx = std::max(mx, p.floor_value);
    }
    min_suffix[i] = min_suffix[i + 1] + mn;
    max_suffix[i] = max_suffix[i + 1] + mx;
  }

  std::vector<const Piece*> chosen(d);
  auto walk = [&](auto&& self, std::size_t i, long sum) -> void {
    if (i == d) {
      if (sum == target) {
        Box nb;
        nb.coords.reserve(d);
        for (const Piece* p : chosen) nb.coords.push_back(p->iv);
        out.push_back(std::move(nb));
      }
      return;
    }
    for (const Piece& p : pieces[i]) {
      long s = sum + p.floor_value;
      if (s + min_suffix[i + 1] > target || s + max_suffix[i + 1] < target) continue;
      chosen[i] = &p;
      self(self, i + 1, s);
    }
  };
  walk(walk, 0, 0);

#ifndef NDEBUG
  for (const Box& nb : out) {
    for (std::size_t i = 0; i < nb.coords.size(); ++i) {
      // floor-constancy: no multiple of 1/n strictly inside the piece
      const Interval& iv = nb.coords[i];
      long f = rat_floor_long(iv.lo * Rational(n));
      assert(iv.hi * Rational(n) <= Rational(f + 1));
    }
  }
#endif
}

bool boxes_overlap(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.coords.size(); ++i) {
    const Rational lo = std::max(a.coords[i].lo, b.coords[i].lo);
    const Rational hi = std::min(a.coords[i].hi, b.coords[i].hi);
    if (!(lo < hi)) return false;
  }
  return true;
}

}  // namespace

BoxSet refine_step(const BoxSet& bs, long n, long rhs, const std::vector<Rational>& fixed,
                   int jobs) {
  if (n < 1) throw std::invalid_argument("refine_step: n must be positive");
  const long target = rhs - fixed_floor_sum(fixed, n);
  BoxSet out;
  out.dim = bs.dim;
  std::vector<std::vector<Box>> per_box(bs.boxes.size());
  parallel_for(bs.boxes.size(), jobs,
               [&](std::size_t i) { refine_box(bs.boxes[i], n, target, per_box[i]); });
  for (auto& chunk : per_box)
    for (auto& b : chunk) out.boxes.push_back(std::move(b));
  return out;
}

bool ordered_feasible(const Box& b) {
  Rational t(0);
  for (std::size_t i = 0; i < b.coords.size(); ++i) {
    t = i == 0 ? b.coords[i].lo : std::max(t, b.coords[i].lo);
    if (!(t < b.coords[i].hi)) return false;
  }
  return true;
}

bool pair_sum_feasible(const Box& b, const std::vector<Rational>& fixed, int i, int j,
                       const Rational& s) {
  const int d = static_cast<int>(b.coords.size());
  auto bounds = [&](int idx) -> std::tuple<Rational, Rational, bool> {
    if (idx < d) return {b.coords[idx].lo, b.coords[idx].hi, false};
    const Rational& v = fixed.at(static_cast<std::size_t>(idx - d));
    return {v, v, true};  // degenerate closed interval
  };
  auto [lo_i, hi_i, cl_i] = bounds(i);
  auto [lo_j, hi_j, cl_j] = bounds(j);
  const Rational lo = lo_i + lo_j;
  const Rational hi = hi_i + hi_j;
  if (s < lo) return false;
  if (s < hi) return true;
  return cl_i && cl_j && s == hi;  // both endpoints attained only for fixed+fixed
}

bool pair_sum_filters_feasible(const Box& b, const FloorSystem& sys) {
  if (sys.pair_sum_filters.empty()) return true;
  for (const PairSumFilter& f : sys.pair_sum_filters)
    for (const Rational& s : f.sums)
      if (pair_sum_feasible(b, sys.fixed, f.i, f.j, s)) return true;
  return false;
}

BoxSet solve(const FloorSystem& sys, const SolveOptions& opts) {
  validate_system(sys);
  BoxSet bs = seed_boxset(sys.free_dim);
  for (const Equation& eq : sys.equations) {
    bs = refine_step(bs, eq.n, eq.rhs, sys.fixed, opts.jobs);
    if (sys.ordered && opts.ordering_stage == OrderingStage::kPerStep) {
      std::erase_if(bs.boxes, [](const Box& b) { return !ordered_feasible(b); });
    }
    if (bs.boxes.empty()) break;
  }
  if (sys.ordered && opts.ordering_stage == OrderingStage::kFinal)
    std::erase_if(bs.boxes, [](const Box& b) { return !ordered_feasible(b); });
  if (!sys.pair_sum_filters.empty())
    std::erase_if(bs.boxes, [&](const Box& b) { return !pair_sum_filters_feasible(b, sys); });
  return boxset_normalize(bs);
}

BoxSet boxset_normalize(const BoxSet& bs) {
  BoxSet out = bs;
  for (std::size_t i = 0; i < out.boxes.size(); ++i)
    for (std::size_t j = i + 1; j < out.boxes.size(); ++j)
      if (boxes_overlap(out.boxes[i], out.boxes[j]))
        throw InvariantError("boxset_normalize: boxes overlap");

  // Merge abutting boxes that differ in exactly one coordinate.
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 0; i < out.boxes.size() && !merged; ++i) {
      for (std::size_t j = i + 1; j < out.boxes.size() && !merged; ++j) {
        Box& a = out.boxes[i];
        Box& b = out.boxes[j];
        int diff = -1;
        bool mergeable = true;
        for (std::size_t k = 0; k < a.coords.size(); ++k) {
          if (a.coords[k] == b.coords[k]) continue;
          if (diff != -1) { mergeable = false; break; }
          diff = static_cast<int>(k);
        }
        if (!mergeable || diff < 0) continue;
        const Interval& ia = a.coords[diff];
        const Interval& ib = b.coords[diff];
        if (ia.hi == ib.lo) {
          a.coords[diff] = Interval(ia.lo, ib.hi);
        } else if (ib.hi == ia.lo) {
          a.coords[diff] = Interval(ib.lo, ia.hi);
        } else {
          continue;
        }
        out.boxes.erase(out.boxes.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
    }
  }
  std::sort(out.boxes.begin(), out.boxes.end(), box_less);
  return out;
}

std::vector<Rational> oracle_grid(long max_denominator) {
  if (max_denominator < 2)
    throw std::invalid_argument("oracle_grid: max_denominator must be >= 2");
  std::set<Rational> grid;
  for (long q = 1; q <= max_denominator; ++q)
    for (long p = 0; p < q; ++p) grid.insert(Rational(p, q));
  std::vector<Rational> sorted(grid.begin(), grid.end());
  std::vector<Rational> out;
  out.reserve(sorted.size() * 2);
  const Rational half(1, 2);
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    out.push_back(sorted[i]);
    const Rational& next = i + 1 < sorted.size() ? sorted[i + 1] : Rational(1);
    out.push_back((sorted[i] + next) * half);
  }
  return out;
}

namespace {

struct OracleTables {
  std::vector<std::vector<long>> floors;       // floors[g][e] = floor(n_e * grid[g])
  std::vector<std::vector<std::size_t>> rank;  // rank[e][v] = first grid index with floor >= v
};

// Floor values are nondecreasing along the sorted grid, so the grid indices
// carrying any floor-value window [glo, ghi] form the contiguous range
// [rank[e][glo], rank[e][ghi+1]); the walk below then needs no rational
// arithmetic at all.
OracleTables oracle_tables(const FloorSystem& sys, const std::vector<Rational>& grid) {
  OracleTables t;
  const std::size_t neq = sys.equations.size();
  t.floors.assign(grid.size(), std::vector<long>(neq, 0));
  for (std::size_t g = 0; g < grid.size(); ++g)
    for (std::size_t e = 0; e < neq; ++e)
      t.floors[g][e] = rat_floor_long(grid[g] * Rational(sys.equations[e].n));
  t.rank.resize(neq);
  for (std::size_t e = 0; e < neq; ++e) {
    const long n = sys.equations[e].n;
    t.rank[e].assign(static_cast<std::size_t>(n) + 1, grid.size());
    long v = 0;
    for (std::size_t g = 0; g < grid.size(); ++g) {
      while (v <= t.floors[g][e]) t.rank[e][static_cast<std::size_t>(v++)] = g;
    }
  }
  return t;
}

struct OracleContext {
  const FloorSystem& sys;
  const std::vector<Rational>& grid;
  const OracleTables& tables;
  std::optional<std::size_t> pin_first;  // restrict depth 0 to one grid index
  std::vector<std::vector<Rational>> hits;
};

bool point_passes_filters(const std::vector<Rational>& point, const FloorSystem& sys) {
  if (sys.pair_sum_filters.empty()) return true;
  const int d = sys.free_dim;
  auto value = [&](int idx) -> const Rational& {
    return idx < d ? point[static_cast<std::size_t>(idx)]
                   : sys.fixed[static_cast<std::size_t>(idx - d)];
  };
  for (const PairSumFilter& f : sys.pair_sum_filters)
    for (const Rational& s : f.sums)
      if (value(f.i) + value(f.j) == s) return true;
  return false;
}

// Depth-first product walk.  At each depth the admissible floor value g for
// coordinate i and equation n is boxed by what the remaining m coordinates
// can still contribute (each remaining floor lies in [g, n-1] when ordered,
// [0, n-1] otherwise); intersecting the equations' grid-index ranges keeps
// the walk near the solution tube.
void oracle_walk(OracleContext& ctx, std::size_t depth, std::vector<std::size_t>& idx,
                 std::vector<long>& remaining) {
  const std::size_t dims = static_cast<std::size_t>(ctx.sys.free_dim);
  const std::size_t neq = ctx.sys.equations.size();
  if (depth == dims) {
    for (std::size_t e = 0; e < neq; ++e)
      if (remaining[e] != 0) return;
    std::vector<Rational> point(dims);
    for (std::size_t i = 0; i < dims; ++i) point[i] = ctx.grid[idx[i]];
    if (point_passes_filters(point, ctx.sys)) ctx.hits.push_back(std::move(point));
    return;
  }
  const long m = static_cast<long>(dims - depth);  // coordinates still unset
  std::size_t start = 0, stop = ctx.grid.size();
  for (std::size_t e = 0; e < neq; ++e) {
    const long n = ctx.sys.equations[e].n;
    const long t = remaining[e];
    long glo = std::max<long>(0, t - (m - 1) * (n - 1));
    long ghi = ctx.sys.ordered ? (t >= 0 ? t / m : -1) : std::min(n - 1, t);
    if (glo > ghi) return;
    start = std::max(start, ctx.tables.rank[e][static_cast<std::size_t>(glo)]);
    stop = std::min(stop, ctx.tables.rank[e][static_cast<std::size_t>(std::min(ghi + 1, n))]);
  }
  if (ctx.sys.ordered && depth > 0)
    start = std::max(start, idx[depth - 1]);  // grid is sorted: index order = value order
  if (depth == 0 && ctx.pin_first) {
    if (*ctx.pin_first < start || *ctx.pin_first >= stop) return;
    start = *ctx.pin_first;
    stop = start + 1;
  }
  for (std::size_t g = start; g < stop; ++g) {
    idx[depth] = g;
    const std::vector<long>& fl = ctx.tables.floors[g];
    bool feasible = true;
    for (std::size_t e = 0; e < neq; ++e) {
      remaining[e] -= fl[e];
      if (remaining[e] < 0) feasible = false;
    }
    if (feasible) oracle_walk(ctx, depth + 1, idx, remaining);
    for (std::size_t e = 0; e < neq; ++e) remaining[e] += fl[e];
  }
}

}  // namespace

std::vector<std::vector<Rational>> brute_oracle(const FloorSystem& sys, long max_denominator,
                                                int jobs) {
  validate_system(sys);
  const std::vector<Rational> grid = oracle_grid(max_denominator);
  const OracleTables tables = oracle_tables(sys, grid);
  const std::size_t neq = sys.equations.size();
  std::vector<long> targets(neq);
  for (std::size_t e = 0; e < neq; ++e)
    targets[e] = sys.equations[e].rhs - fixed_floor_sum(sys.fixed, sys.equations[e].n);

  if (jobs <= 1) {
    OracleContext ctx{sys, grid, tables, std::nullopt, {}};
    std::vector<std::size_t> idx(static_cast<std::size_t>(sys.free_dim));
    std::vector<long> remaining = targets;
    oracle_walk(ctx, 0, idx, remaining);
    return std::move(ctx.hits);
  }

  // Partition the walk by the first coordinate; concatenating the per-value
  // results in grid order reproduces the serial output.
  std::vector<std::vector<std::vector<Rational>>> per_first(grid.size());
  parallel_for(grid.size(), jobs, [&](std::size_t g0) {
    OracleContext ctx{sys, grid, tables, g0, {}};
    std::vector<std::size_t> idx(static_cast<std::size_t>(sys.free_dim));
    std::vector<long> remaining = targets;
    oracle_walk(ctx, 0, idx, remaining);
    per_first[g0] = std::move(ctx.hits);
  });
  std::vector<std::vector<Rational>> hits;
  for (auto& chunk : per_first)
    for (auto& p : chunk) hits.push_back(std::move(p));
  return hits;
}

}  // namespace mldlab
