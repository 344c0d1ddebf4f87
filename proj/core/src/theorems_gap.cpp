#include <algorithm>
#include <numeric>
#include <set>

#include "mldlab/expected_data.hpp"
#include "mldlab/parallel.hpp"
#include "mldlab/singularity.hpp"
#include "theorems_util.hpp"

namespace mldlab {

namespace {

using detail::json;
using detail::ReportBuilder;

json load(std::string_view embedded) { return io::parse_text(std::string(embedded)); }

struct GapSweepResult {
  std::vector<std::pair<long, std::vector<long>>> violations;   // normalized forms
  std::vector<std::pair<long, std::vector<long>>> extremizers;  // normalized forms
};

// Sweeps the isolated quotients of one group order in normalized form: mld
// is invariant under relabeling by units, so the first weight can be pinned
// to 1 and the rest enumerated as a nondecreasing coprime tuple.
// Classification of the toric minimum S = min_j sum((j*a_i-1) mod r + 1):
//   violation   <=>  bound < S/r < ceiling      (the forbidden gap)
//   extremizer  <=>  S/r == bound
void sweep_isolated(long r, int extra_dims, const Rational& bound, long ceiling_num,
                    GapSweepResult& out) {
  const long bn = rat_floor_long(Rational(bound.num()));  // bound = bn/bd
  const long bd = rat_floor_long(Rational(bound.den()));
  std::vector<long> cop;
  for (long a = 1; a < r; ++a)
    if (std::gcd(a, r) == 1) cop.push_back(a);
  if (cop.empty()) return;

  std::vector<long> w(static_cast<std::size_t>(extra_dims) + 1, 1);
  const long bail = (bn * r + bd - 1) / bd;  // S < bail  =>  S/r strictly below bound
  auto classify = [&]() {
    long s = mld_numerator(r, w, bail);
    if (s * bd < bn * r) return;
    if (s * bd == bn * r) {
      out.extremizers.emplace_back(r, w);
    } else if (s < ceiling_num * r) {
      out.violations.emplace_back(r, w);
    }
  };
  auto rec = [&](auto&& self, int i, std::size_t lo_idx) -> void {
    if (i == extra_dims + 1) {
      classify();
      return;
    }
    for (std::size_t t = lo_idx; t < cop.size(); ++t) {
      w[static_cast<std::size_t>(i)] = cop[t];
      self(self, i + 1, t);
    }
  };
  rec(rec, 1, 0);
}

// Expands normalized extremizers to the full set of sorted weight tuples in
// their unit orbit.
std::set<std::pair<long, std::vector<long>>> expand_orbits(
    const std::vector<std::pair<long, std::vector<long>>>& normalized) {
  std::set<std::pair<long, std::vector<long>>> out;
  for (const auto& [r, w] : normalized) {
    for (long j = 1; j <= r; ++j) {
      if (std::gcd(j, r) != 1) continue;
      std::vector<long> t(w.size());
      for (std::size_t i = 0; i < w.size(); ++i) {
        long m = (j * w[i]) % r;
        t[i] = m == 0 ? r : m;
      }
      std::sort(t.begin(), t.end());
      out.insert({r, std::move(t)});
    }
  }
  return out;
}

TheoremReport gap_sweep(const std::string& id, std::string_view expected_text, long r_max,
                        int extra_dims, long ceiling_num, const RunOptions& opts) {
  ReportBuilder rb(id);
  rb.expected() = load(expected_text);
  rb.expected()["r_max"] = r_max;
  const Rational bound = Rational::parse(rb.expected().at("bound").get<std::string>());

  std::vector<GapSweepResult> per_r(static_cast<std::size_t>(std::max(0L, r_max - 1)));
  parallel_for(per_r.size(), opts.jobs, [&](std::size_t i) {
    sweep_isolated(static_cast<long>(i) + 2, extra_dims, bound, ceiling_num, per_r[i]);
  });

  std::vector<std::pair<long, std::vector<long>>> violations, extremizers_norm;
  for (auto& chunk : per_r) {
    violations.insert(violations.end(), chunk.violations.begin(), chunk.violations.end());
    extremizers_norm.insert(extremizers_norm.end(), chunk.extremizers.begin(),
                            chunk.extremizers.end());
  }
  auto extremizers = expand_orbits(extremizers_norm);

  json jv = json::array();
  for (const auto& [r, w] : violations) jv.push_back(json{{"r", r}, {"weights", w}});
  json je = json::array();
  for (const auto& [r, w] : extremizers) je.push_back(json{{"r", r}, {"weights", w}});
  rb.actual() = json{{"r_max", r_max}, {"violations", jv}, {"extremizers", je}};

  rb.require(violations.empty(), "found an isolated quotient inside the forbidden gap");
  const auto& must = rb.expected().at("must_include");
  std::vector<long> mw = must.at("weights").get<std::vector<long>>();
  std::sort(mw.begin(), mw.end());
  rb.require(extremizers.count({must.at("r").get<long>(), mw}) > 0,
             "expected extremizer missing from the sweep");
  detail::progress(opts, id + ": swept r <= " + std::to_string(r_max) + ", " +
                             std::to_string(extremizers.size()) + " extremizers");
  return rb.finish();
}

}  // namespace

TheoremReport desk_gap_threefold(long r_max, const RunOptions& opts) {
  if (r_max < 13) throw std::invalid_argument("desk_gap_threefold: r_max must be >= 13");
  return gap_sweep("gap3d", data::gap3d_expected, r_max, 2, 1, opts);
}

TheoremReport desk_gap_5d_isolated(long r_max, const RunOptions& opts) {
  if (r_max < 19) throw std::invalid_argument("desk_gap_5d_isolated: r_max must be >= 19");
  return gap_sweep("gap5d", data::gap5d_expected, r_max, 4, 2, opts);
}

}  // namespace mldlab
