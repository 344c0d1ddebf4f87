#include "mldlab/enumerate.hpp"

#include <algorithm>

#include "mldlab/parallel.hpp"

namespace mldlab {

namespace {

// Reject a candidate as soon as some partial toric minimum drops to
// (2-eps)*r or below; survivors still get the exact in_A test.
bool mld_window_pass(long r, std::span<const long> w, const std::optional<Rational>& eps) {
  if (eps) {
    // min S(j) must stay strictly above (2 - eps) * r
    Rational threshold = (Rational(2) - *eps) * Rational(r);
    long bail = rat_floor_long(threshold) + 1;  // S < bail  <=>  S <= threshold
    long s = mld_numerator(r, w, bail);
    if (Rational(s) <= threshold) return false;
    return s < 2 * r;
  }
  long s = mld_numerator(r, w);
  return s < 2 * r;
}

void sweep_r(long r, int level, const std::optional<Rational>& eps, bool bar_only,
             std::vector<AEnumEntry>& out) {
  if (r < 1) return;
  // Nondecreasing 5-tuples over [1, r-1]; within the bar regime the weight
  // sum is pinned to a short window, so enumerate per admissible sum.
  long sum_lo = 5, sum_hi = 5 * (r - 1);
  if (bar_only) {
    sum_hi = 2 * r - 1;
    if (eps) {
      Rational t = (Rational(2) - *eps) * Rational(r);
      sum_lo = std::max(sum_lo, rat_floor_long(t) + 1);
    }
  }
  if (r == 1 || sum_lo > sum_hi) return;

  std::array<long, 5> w{};
  auto rec = [&](auto&& self, int i, long lo, long left) -> void {
    if (i == 4) {
      if (left < lo || left > r - 1) return;
      w[4] = left;
      if (!mld_window_pass(r, w, eps)) return;
      CyclicQuotient cq(r, std::vector<long>(w.begin(), w.end()));
      AMembership m = in_A(cq, level, eps);
      if (!m.member) return;
      if (bar_only && !m.bar) return;
      out.push_back(AEnumEntry{std::move(cq), std::move(m)});
      return;
    }
    for (long a = lo; a <= r - 1; ++a) {
      long rest = left - a;
      if (rest < a * (4 - i)) break;           // remaining coords are >= a each
      if (rest > (4 - i) * (r - 1)) continue;  // remaining coords are <= r-1 each
      self(self, i + 1, a, rest);
    }
  };
  // Outside the bar regime the mld window filter still discards almost
  // every tuple after a few toric steps.
  for (long total = sum_lo; total <= sum_hi; ++total) rec(rec, 0, 1, total);
}

}  // namespace

std::vector<AEnumEntry> enumerate_a_members(int level, const std::optional<Rational>& eps,
                                            long r_min, long r_max, bool bar_only, int jobs) {
  if (r_min < 1 || r_max < r_min)
    throw std::invalid_argument("enumerate_a_members: need 1 <= r_min <= r_max");
  if (eps && !(*eps > Rational(0)))
    throw std::invalid_argument("enumerate_a_members: eps must be positive");
  std::vector<std::vector<AEnumEntry>> per_r(static_cast<std::size_t>(r_max - r_min + 1));
  parallel_for(per_r.size(), jobs, [&](std::size_t i) {
    sweep_r(r_min + static_cast<long>(i), level, eps, bar_only, per_r[i]);
  });
  std::vector<AEnumEntry> out;
  for (auto& chunk : per_r) {
    std::sort(chunk.begin(), chunk.end(), [](const AEnumEntry& a, const AEnumEntry& b) {
      return a.cq.weights < b.cq.weights;
    });
    for (auto& e : chunk) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace mldlab
