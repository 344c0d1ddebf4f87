#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <set>

#include "mldlab/boxsolver.hpp"
#include "mldlab/enumerate.hpp"
#include "mldlab/expected_data.hpp"
#include "mldlab/parallel.hpp"
#include "mldlab/singularity.hpp"
#include "theorems_util.hpp"

namespace mldlab {

namespace {

using detail::json;
using detail::ReportBuilder;

json load(std::string_view embedded) { return io::parse_text(std::string(embedded)); }

// The bar-regime enumeration behind the r <= 51 classification: sorted
// coprime triple, gcd-tied pair, weight sum in {2r-3, 2r-2, 2r-1}, toric
// sum >= weight sum at every index, weight sum above (2 - 1/13) r.
std::vector<std::pair<long, std::vector<long>>> a1_enumeration(int jobs) {
  constexpr long kRMin = 14, kRMax = 51;
  std::vector<std::set<std::vector<long>>> per_r(kRMax - kRMin + 1);
  parallel_for(per_r.size(), jobs, [&](std::size_t ri) {
    const long r = kRMin + static_cast<long>(ri);
    std::vector<long> cop;
    for (long a = 1; a < r; ++a)
      if (std::gcd(a, r) == 1) cop.push_back(a);
    std::array<long, 5> w{};
    for (long target = 2 * r - 3; target <= 2 * r - 1; ++target) {
      if (13 * target <= 25 * r) continue;
      for (std::size_t i1 = 0; i1 < cop.size(); ++i1) {
        w[0] = cop[i1];
        for (std::size_t i2 = i1; i2 < cop.size(); ++i2) {
          w[1] = cop[i2];
          if (w[0] + w[1] + w[1] + 2 > target) break;
          for (std::size_t i3 = i2; i3 < cop.size(); ++i3) {
            w[2] = cop[i3];
            const long s45 = target - w[0] - w[1] - w[2];
            if (s45 < 2) break;
            for (long a4 = 1; 2 * a4 <= s45; ++a4) {
              const long a5 = s45 - a4;
              if (a5 >= r) continue;
              if (std::gcd(a4, r) != std::gcd(a5, r)) continue;
              w[3] = a4;
              w[4] = a5;
              if (mld_numerator(r, w, target) < target) continue;
              std::vector<long> sorted(w.begin(), w.end());
              std::sort(sorted.begin(), sorted.end());
              per_r[ri].insert(std::move(sorted));
            }
          }
        }
      }
    }
  });
  std::vector<std::pair<long, std::vector<long>>> out;
  for (std::size_t ri = 0; ri < per_r.size(); ++ri)
    for (const auto& wv : per_r[ri]) out.emplace_back(kRMin + static_cast<long>(ri), wv);
  return out;
}

json tuples_to_json(const std::vector<std::pair<long, std::vector<long>>>& tuples) {
  json out = json::array();
  for (const auto& [r, w] : tuples) out.push_back(json{{"r", r}, {"weights", w}});
  return out;
}

std::set<std::pair<long, std::vector<long>>> canonical_tuple_set(const json& list) {
  std::set<std::pair<long, std::vector<long>>> out;
  for (const auto& e : list) {
    std::vector<long> w = e.at("weights").get<std::vector<long>>();
    std::sort(w.begin(), w.end());
    out.insert({e.at("r").get<long>(), std::move(w)});
  }
  return out;
}

FloorSystem ordered_free_system(int dim, const std::vector<Equation>& eqs) {
  FloorSystem sys;
  sys.free_dim = dim;
  sys.ordered = true;
  sys.equations = eqs;
  return sys;
}

std::vector<Equation> window_equations(long k, long upper, long q /* 0 = none */) {
  std::vector<Equation> eqs;
  for (long n = 2; n <= k - 1; ++n)
    if (q == 0 || n % q != 0) eqs.push_back({n, 2 * n - 3});
  for (long n = k; n <= upper; ++n) {
    if (n == k + 1) continue;
    if (q != 0 && n % q == 0) continue;
    eqs.push_back({n, 2 * n - 4});
  }
  return eqs;
}

}  // namespace

TheoremReport verify_thm_a1(const RunOptions& opts) {
  ReportBuilder rb("a1");
  rb.expected() = load(data::thm_a1_expected);
  auto found = a1_enumeration(opts.jobs);
  rb.actual() = json{{"tuples", tuples_to_json(found)}};

  auto want = canonical_tuple_set(rb.expected().at("tuples"));
  std::set<std::pair<long, std::vector<long>>> got(found.begin(), found.end());
  for (const auto& t : want)
    if (!got.count(t))
      rb.mismatch("missing tuple r=", t.first);
  for (const auto& t : got)
    if (!want.count(t))
      rb.mismatch("unexpected tuple r=", t.first);
  rb.require(got.size() == 10, "enumeration must produce exactly 10 tuples");
  detail::progress(opts, "a1: enumeration done, " + std::to_string(got.size()) + " tuples");
  return rb.finish();
}

TheoremReport verify_thm_3_1(const RunOptions& opts) {
  ReportBuilder rb("thm31");
  rb.expected() = load(data::thm_31_expected);
  const Rational eps = Rational::parse(rb.expected().at("eps").get<std::string>());

  auto candidates = a1_enumeration(opts.jobs);
  rb.require(candidates.size() == 10, "level-2 bar enumeration must yield 10 candidates");

  auto want = canonical_tuple_set(rb.expected().at("survivors"));
  json detail_rows = json::array();
  std::set<std::pair<long, std::vector<long>>> survivors;
  for (const auto& [r, w] : candidates) {
    CyclicQuotient cq(r, w);
    AMembership m = in_A(cq, 4, eps);
    json row{{"r", r}, {"weights", w}, {"level4_member", m.member}, {"bar", m.bar}};
    if (m.member && m.bar) {
      survivors.insert({r, w});
      json fired = json::array();
      for (const auto& rw : m.roles)
        for (Disjunct d : rw.fired) fired.push_back(disjunct_name(d));
      row["disjuncts"] = fired;
      // Survivors must show the expected fine structure: the growth
      // inequality of the associated function and D(n,1) on the whole
      // window [2, floor(1/eps) - 2].
      auto roles = valid_role_assignments(cq);
      if (roles.empty()) {
        rb.mismatch("survivor r=", r, " has no valid role assignment");
        detail_rows.push_back(std::move(row));
        continue;
      }
      bool lemma26 = check_lemma_2_6(cq, roles.front());
      rb.require(lemma26, "survivor fails the associated-function growth bounds");
      const Rational eps_cq = Rational(2) - m.mld_value;
      const long n_hi = rat_floor_long(Rational(1) / eps_cq) - 2;
      const long q = assoc_denominator(cq, roles.front());
      for (long n = 2; n <= n_hi; ++n) {
        if (!in_gamma(q, n)) continue;
        if (!cond_D(cq, roles.front(), n, 1))
          rb.mismatch("survivor r=", r, " misses D(", n, ",1)");
      }
    }
    detail_rows.push_back(std::move(row));
  }
  rb.actual() = json{{"candidates", detail_rows}};

  for (const auto& t : want)
    if (!survivors.count(t)) rb.mismatch("expected survivor missing, r=", t.first);
  for (const auto& t : survivors)
    if (!want.count(t)) rb.mismatch("unexpected survivor, r=", t.first);
  return rb.finish();
}

TheoremReport verify_thm_a2(const RunOptions& opts) {
  ReportBuilder rb("a2");
  rb.expected() = load(data::thm_a2_expected);

  std::vector<Equation> eqs;
  for (long n = 2; n <= 18; ++n) eqs.push_back({n, 2 * n - 3});
  FloorSystem sys = ordered_free_system(5, eqs);

  // The first induction step must reproduce the printed seed state.
  BoxSet v2 = refine_step(seed_boxset(5), 2, 1, {}, opts.jobs);
  std::erase_if(v2.boxes, [](const Box& b) { return !ordered_feasible(b); });
  v2 = boxset_normalize(v2);
  rb.require(io::to_json(v2).at("boxes") == rb.expected().at("v2"),
             "first refinement does not match the printed seed state");

  BoxSet result = solve(sys, {OrderingStage::kPerStep, opts.jobs});
  rb.require(result.empty(), "solver found a solution region");
  detail::progress(opts, "a2: solver empty, running grid oracle");

  const long maxden = rb.expected().at("oracle_max_denominator").get<long>();
  auto points = brute_oracle(sys, maxden, opts.jobs);
  rb.require(points.empty(), "grid oracle found a solution point");

  rb.actual() = json{{"empty", result.empty()},
                     {"oracle_points", points.size()},
                     {"v2", io::to_json(v2).at("boxes")}};
  return rb.finish();
}

TheoremReport verify_thm_a3(const RunOptions& opts) {
  ReportBuilder rb("a3");
  rb.expected() = load(data::thm_a3_expected);
  const long k_min = rb.expected().at("k_min").get<long>();
  const long k_max = rb.expected().at("k_max").get<long>();
  const long k_good = rb.expected().at("k_nonempty").get<long>();

  std::vector<BoxSet> results(static_cast<std::size_t>(k_max - k_min + 1));
  parallel_for(results.size(), opts.jobs, [&](std::size_t i) {
    const long k = k_min + static_cast<long>(i);
    FloorSystem sys = ordered_free_system(5, window_equations(k, std::max(2 * k - 6, 25L), 0));
    results[i] = solve(sys);
  });

  json per_k = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const long k = k_min + static_cast<long>(i);
    per_k.push_back(json{{"k", k}, {"boxes", io::to_json(results[i]).at("boxes")}});
    if (k == k_good) {
      detail::compare_with_printed_boxes(rb, "k=" + std::to_string(k), results[i],
                                         json::array({rb.expected().at("intervals")}));
    } else {
      rb.require(results[i].empty(),
                 "k=" + std::to_string(k) + " must have no solution region");
    }
    detail::progress(opts, "a3: k=" + std::to_string(k) + " done");
  }
  rb.actual() = json{{"per_k", per_k}};
  return rb.finish();
}

namespace {

struct FixedPairSystem {
  long k = 0;  // 0 when there is no D(.,2) window
  long q = 0;
  long b = 0;
  long c = 0;
};

std::vector<FixedPairSystem> coprime_pair_systems(long q_min, long q_max, long k) {
  std::vector<FixedPairSystem> out;
  for (long q = q_min; q <= q_max; ++q)
    for (long b = 1; b < q; ++b) {
      if (std::gcd(b, q) != 1) continue;
      for (long c = b; c < q; ++c)
        if (std::gcd(c, q) == 1) out.push_back({k, q, b, c});
    }
  return out;
}

FloorSystem fixed_pair_floor_system(const FixedPairSystem& s, long upper_no_k) {
  FloorSystem sys;
  sys.free_dim = 3;
  sys.ordered = true;
  sys.fixed = {Rational(s.b, s.q), Rational(s.c, s.q)};
  sys.skip_modulus = s.q;
  if (s.k == 0) {
    for (long n = 2; n <= upper_no_k; ++n)
      if (n % s.q != 0) sys.equations.push_back({n, 2 * n - 3});
  } else {
    sys.equations = window_equations(s.k, std::max(2 * s.k - 8, 25L), s.q);
  }
  return sys;
}

}  // namespace

TheoremReport verify_thm_a4(const RunOptions& opts) {
  ReportBuilder rb("a4");
  rb.expected() = load(data::thm_a4_expected);
  const long q_min = rb.expected().at("q_min").get<long>();
  const long q_max = rb.expected().at("q_max").get<long>();
  const long n_max = rb.expected().at("n_max").get<long>();

  auto systems = coprime_pair_systems(q_min, q_max, 0);
  std::vector<char> nonempty(systems.size(), 0);
  parallel_for(systems.size(), opts.jobs, [&](std::size_t i) {
    nonempty[i] = !solve(fixed_pair_floor_system(systems[i], n_max)).empty();
  });

  json offenders = json::array();
  for (std::size_t i = 0; i < systems.size(); ++i)
    if (nonempty[i]) {
      offenders.push_back(json{{"q", systems[i].q}, {"b", systems[i].b}, {"c", systems[i].c}});
      rb.mismatch("nonempty system at q=", systems[i].q, " b=", systems[i].b, " c=",
                  systems[i].c);
    }

  // Independent count of the (q, b, c) combinations via a totient sieve.
  std::vector<long> phi(static_cast<std::size_t>(q_max) + 1);
  std::iota(phi.begin(), phi.end(), 0L);
  for (long p = 2; p <= q_max; ++p)
    if (phi[p] == p)  // p prime
      for (long m = p; m <= q_max; m += p) phi[m] -= phi[m] / p;
  long expected_count = 0;
  for (long q = q_min; q <= q_max; ++q) expected_count += phi[q] * (phi[q] + 1) / 2;

  rb.require(static_cast<long>(systems.size()) == expected_count,
             "enumerated combination count disagrees with the totient formula");
  rb.require(static_cast<long>(systems.size()) == rb.expected().at("systems").get<long>(),
             "combination count disagrees with the recorded count");

  rb.actual() = json{{"systems", systems.size()},
                     {"systems_by_totient_formula", expected_count},
                     {"nonempty", offenders}};
  detail::progress(opts, "a4: " + std::to_string(systems.size()) + " systems checked");
  return rb.finish();
}

namespace {

// f(n) over a box with fixed coordinates, when floor(n*x) is constant on
// every factor; nullopt otherwise.
std::optional<long> floor_sum_on_box(const Box& b, const std::vector<Rational>& fixed, long n) {
  long total = 0;
  const Rational nr(n);
  for (const Interval& iv : b.coords) {
    long f = rat_floor_long(iv.lo * nr);
    if (iv.hi * nr > Rational(f + 1)) return std::nullopt;
    total += f;
  }
  for (const Rational& v : fixed) total += rat_floor_long(v * nr);
  return total;
}

}  // namespace

TheoremReport verify_thm_a5(const RunOptions& opts) {
  ReportBuilder rb("a5");
  rb.expected() = load(data::thm_a5_expected);
  const long k_min = rb.expected().at("k_min").get<long>();
  const long k_max = rb.expected().at("k_max").get<long>();
  const long q_min = rb.expected().at("q_min").get<long>();
  const long q_max = rb.expected().at("q_max").get<long>();

  std::vector<FixedPairSystem> systems;
  for (long k = k_min; k <= k_max; ++k) {
    auto block = coprime_pair_systems(q_min, q_max, k);
    systems.insert(systems.end(), block.begin(), block.end());
  }
  std::vector<BoxSet> results(systems.size());
  std::atomic<long> done{0};
  parallel_for(systems.size(), opts.jobs, [&](std::size_t i) {
    results[i] = solve(fixed_pair_floor_system(systems[i], 0));
    long d = ++done;
    if (d % 5000 == 0)
      detail::progress(opts, "a5: " + std::to_string(d) + "/" + std::to_string(systems.size()) +
                                 " systems");
  });

  // Group the printed cases (several may share one (k,q,b,c) system).
  using Key = std::array<long, 4>;
  std::map<Key, json> printed;
  for (const auto& cs : rb.expected().at("cases")) {
    Key key{cs.at("k").get<long>(), cs.at("q").get<long>(), cs.at("b").get<long>(),
            cs.at("c").get<long>()};
    printed[key].push_back(cs.at("intervals"));
  }
  std::map<Key, std::string> anticipated;  // survivors outside the printed list
  for (const auto& ex : rb.expected().at("excluded_survivors")) {
    Key key{ex.at("k").get<long>(), ex.at("q").get<long>(), ex.at("b").get<long>(),
            ex.at("c").get<long>()};
    anticipated[key] = ex.at("reason").get<std::string>();
  }

  std::map<Key, std::size_t> survivor_index;
  json survivors = json::array();
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (results[i].empty()) continue;
    const auto& s = systems[i];
    Key key{s.k, s.q, s.b, s.c};
    survivor_index[key] = i;
    survivors.push_back(json{{"k", s.k},
                             {"q", s.q},
                             {"b", s.b},
                             {"c", s.c},
                             {"boxes", io::to_json(results[i]).at("boxes")}});
  }

  for (const auto& [key, boxes] : printed) {
    auto it = survivor_index.find(key);
    if (it == survivor_index.end()) {
      rb.mismatch("printed case (k=", key[0], ", q=", key[1], ", b=", key[2], ", c=", key[3],
                  ") did not survive");
      continue;
    }
    std::string label = "case (" + std::to_string(key[0]) + "," + std::to_string(key[1]) + "," +
                        std::to_string(key[2]) + "," + std::to_string(key[3]) + ")";
    detail::compare_with_printed_boxes(rb, label, results[it->second], boxes);
  }

  json excluded = json::array();
  for (const auto& [key, idx] : survivor_index) {
    if (printed.count(key)) continue;
    auto it = anticipated.find(key);
    std::string label = "survivor (k=" + std::to_string(key[0]) + ", q=" +
                        std::to_string(key[1]) + ", b=" + std::to_string(key[2]) + ", c=" +
                        std::to_string(key[3]) + ")";
    if (it == anticipated.end()) {
      rb.mismatch(label, " is neither printed nor a recorded exclusion");
      continue;
    }
    const auto& s = systems[idx];
    bool justified = false;
    if (it->second == "anchor_index_skipped") {
      // The D(k,2) anchor equation vanished (q | k), so the tuple cannot be
      // the minimal index the case analysis quantifies over; its region must
      // reappear verbatim under a printed case with the anchor present.
      if (s.k % s.q == 0) {
        for (const auto& [pkey, pidx] : survivor_index) {
          if (!printed.count(pkey)) continue;
          if (pkey[1] != key[1] || pkey[2] != key[2] || pkey[3] != key[3]) continue;
          if (pkey[0] % pkey[1] == 0) continue;
          if (results[pidx].boxes == results[idx].boxes) justified = true;
        }
      }
    } else if (it->second == "floor_growth_at_k_plus_1") {
      // Points of the intended regime satisfy f(n) >= 2n-4 throughout the
      // window; the region forces f(k+1) below that, so no associated point
      // lies in it.  Requires k+1 to be a live index (q does not divide it).
      if ((s.k + 1) % s.q != 0) {
        justified = !results[idx].boxes.empty();
        for (const Box& b : results[idx].boxes) {
          auto f = floor_sum_on_box(b, {Rational(s.b, s.q), Rational(s.c, s.q)}, s.k + 1);
          if (!f || *f >= 2 * (s.k + 1) - 4) justified = false;
        }
      }
    }
    rb.require(justified, label + " exclusion reason '" + it->second + "' did not check out");
    excluded.push_back(json{{"k", key[0]},
                            {"q", key[1]},
                            {"b", key[2]},
                            {"c", key[3]},
                            {"reason", it->second},
                            {"justified", justified}});
  }
  for (const auto& [key, reason] : anticipated)
    if (!survivor_index.count(key))
      rb.mismatch("recorded exclusion (k=", key[0], ", q=", key[1], ", b=", key[2], ", c=",
                  key[3], ") did not actually survive");

  rb.actual() = json{{"systems", systems.size()},
                     {"survivors", survivors},
                     {"excluded_survivors", excluded}};
  return rb.finish();
}

TheoremReport verify_thm_a6(const RunOptions& opts) {
  ReportBuilder rb("a6");
  rb.expected() = load(data::thm_a6_expected);

  std::vector<Equation> eqs;
  for (long n = 2; n <= 12; ++n) eqs.push_back({n, n - 2});
  FloorSystem sys = ordered_free_system(3, eqs);

  BoxSet first = refine_step(seed_boxset(3), 2, 0, {}, 1);
  std::erase_if(first.boxes, [](const Box& b) { return !ordered_feasible(b); });
  first = boxset_normalize(first);
  rb.require(io::to_json(first).at("boxes") == rb.expected().at("first_step"),
             "first refinement does not match");

  BoxSet result = solve(sys, {OrderingStage::kPerStep, opts.jobs});
  rb.require(result.empty(), "solver found a solution region");

  const long maxden = rb.expected().at("oracle_max_denominator").get<long>();
  auto points = brute_oracle(sys, maxden, opts.jobs);
  rb.require(points.empty(), "grid oracle found a solution point");

  rb.actual() = json{{"empty", result.empty()},
                     {"oracle_points", points.size()},
                     {"first_step", io::to_json(first).at("boxes")}};
  return rb.finish();
}

TheoremReport verify_thm_d213(const RunOptions& opts) {
  ReportBuilder rb("d213");
  rb.expected() = load(data::thm_d213_expected);

  std::vector<Rational> sums;
  for (const auto& s : rb.expected().at("pair_sums"))
    sums.push_back(Rational::parse(s.get<std::string>()));

  FloorSystem sys;
  sys.free_dim = 3;
  sys.ordered = true;
  for (long n : {3L, 5L, 7L, 9L}) sys.equations.push_back({n, n - 2});
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) sys.pair_sum_filters.push_back({i, j, sums});

  auto star_filter = [&](BoxSet& bs) {
    std::erase_if(bs.boxes, [&](const Box& b) { return !pair_sum_filters_feasible(b, sys); });
  };

  // Walk the induction by hand: the printed case lists interleave the
  // equation steps with the pair-sum elimination, so apply the filter after
  // each step and compare at the stage recorded in the catalog.
  BoxSet bs = seed_boxset(3);
  json stages = json::array();
  for (const auto& stage : rb.expected().at("stages")) {
    const long n = stage.at("n").get<long>();
    const bool after_star = stage.at("after_star").get<bool>();
    bs = refine_step(bs, n, n - 2, {}, 1);
    std::erase_if(bs.boxes, [](const Box& b) { return !ordered_feasible(b); });
    std::sort(bs.boxes.begin(), bs.boxes.end(), box_less);
    if (after_star) star_filter(bs);
    detail::compare_with_printed_boxes(rb, "stage n=" + std::to_string(n), bs,
                                       stage.at("boxes"));
    stages.push_back(json{{"n", n}, {"boxes", io::to_json(bs).at("boxes")}});
    if (!after_star) star_filter(bs);
  }
  rb.require(bs.empty(), "pair-sum filter left boxes after the last stage");

  // The one-shot solver (filters applied to final boxes) must agree.
  BoxSet direct = solve(sys, {OrderingStage::kPerStep, opts.jobs});
  rb.require(direct.empty(), "solve() with final pair-sum filtering is nonempty");

  rb.actual() = json{{"stages", stages}, {"final_empty", bs.empty() && direct.empty()}};
  return rb.finish();
}

}  // namespace mldlab
