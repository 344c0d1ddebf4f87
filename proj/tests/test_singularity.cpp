#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "mldlab/enumerate.hpp"
#include "mldlab/singularity.hpp"
#include "test_support.hpp"

using namespace mldlab;
using testsupport::f_reference;
using testsupport::mld_reference;

namespace {

CyclicQuotient cq(long r, std::vector<long> w) { return CyclicQuotient(r, std::move(w)); }

RoleAssignment first_roles(const CyclicQuotient& c) {
  auto all = valid_role_assignments(c);
  REQUIRE(!all.empty());
  return all.front();
}

CyclicQuotient random_cq(std::mt19937& rng, int dim_lo = 3, int dim_hi = 5, long r_max = 60) {
  std::uniform_int_distribution<long> dr(1, r_max);
  std::uniform_int_distribution<int> dd(dim_lo, dim_hi);
  long r = dr(rng);
  std::uniform_int_distribution<long> dw(1, r);
  std::vector<long> w(static_cast<std::size_t>(dd(rng)));
  for (long& a : w) a = dw(rng);
  return CyclicQuotient(r, std::move(w));
}

}  // namespace

TEST_CASE("construction validates the weight range") {
  CHECK_THROWS_AS(cq(0, {1}), std::invalid_argument);
  CHECK_THROWS_AS(cq(5, {}), std::invalid_argument);
  CHECK_THROWS_AS(cq(5, {0, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(cq(5, {6, 1, 2}), std::invalid_argument);
  CHECK_NOTHROW(cq(5, {5, 1, 2}));  // weights equal to r are allowed here
}

TEST_CASE("mld on the documented singularities") {
  auto m = mld(cq(13, {3, 4, 5}));
  CHECK(m.value == Rational(12, 13));
  CHECK(std::find(m.witnesses.begin(), m.witnesses.end(), 1) != m.witnesses.end());

  CHECK(mld(cq(19, {3, 4, 5, 7, 18})).value == Rational(37, 19));
  CHECK(mld(cq(1, {1, 1, 1})).value == Rational(3));

  auto d = mld(cq(13, {6, 8, 10, 2, 11}));
  CHECK(d.value == Rational(25, 13));
  CHECK(d.witnesses == std::vector<long>{7});
}

TEST_CASE("mld agrees with the plain rational evaluation") {
  std::mt19937 rng(101);
  for (int i = 0; i < 300; ++i) {
    CyclicQuotient c = random_cq(rng);
    auto fast = mld(c);
    auto ref = mld_reference(c);
    CHECK(fast.value == ref.value);
    CHECK(fast.witnesses == ref.witnesses);
  }
}

TEST_CASE("f_value on the documented points") {
  CyclicQuotient c = cq(19, {3, 4, 5, 7, 18});
  CHECK(f_value(c, 1) == 0);
  CHECK(f_value(c, 2) == 1);
  // Direct evaluation: floors of (54,72,90,126,324)/19 sum to 32.
  CHECK(f_value(c, 18) == f_reference(c, 18));
  CHECK(f_value(c, 18) == 32);
  CHECK_THROWS_AS(f_value(cq(5, {5, 1, 2}), 2), std::invalid_argument);
  CHECK_THROWS_AS(f_value(c, 0), std::invalid_argument);
}

TEST_CASE("f_value agrees with the rational evaluation on random inputs") {
  std::mt19937 rng(102);
  for (int i = 0; i < 300; ++i) {
    CyclicQuotient c = random_cq(rng);
    if (std::any_of(c.weights.begin(), c.weights.end(), [&](long a) { return a >= c.r; }))
      continue;
    std::uniform_int_distribution<long> dn(1, 3 * c.r);
    long n = dn(rng);
    CHECK(f_value(c, n) == f_reference(c, n));
  }
}

TEST_CASE("assoc_denominator") {
  {
    CyclicQuotient c = cq(14, {3, 5, 13, 2, 4});
    RoleAssignment ra{{0, 1, 2}, {3, 4}};
    CHECK(assoc_denominator(c, ra) == 7);
  }
  {
    CyclicQuotient c = cq(19, {3, 4, 5, 7, 18});
    RoleAssignment ra{{0, 1, 2}, {3, 4}};
    CHECK(assoc_denominator(c, ra) == 19);
  }
  {
    CyclicQuotient c = cq(16, {1, 5, 9, 8, 8});
    RoleAssignment ra{{0, 1, 2}, {3, 4}};
    CHECK(assoc_denominator(c, ra) == 2);
  }
  {
    CyclicQuotient c = cq(16, {1, 5, 9, 8, 8});
    RoleAssignment bad{{0, 1, 3}, {2, 4}};  // gcds do not match the slot shape
    CHECK_THROWS_AS(assoc_denominator(c, bad), std::invalid_argument);
  }
}

TEST_CASE("condition D") {
  CyclicQuotient c19 = cq(19, {3, 4, 5, 7, 18});
  RoleAssignment ra{{0, 1, 2}, {3, 4}};
  CHECK(cond_D(c19, ra, 2, 1));
  CHECK_FALSE(cond_D(c19, ra, 19, 1));  // 19 is outside Gamma_19

  CyclicQuotient c14 = cq(14, {3, 5, 13, 2, 4});
  CHECK_FALSE(cond_D(c14, ra, 7, 1));  // q = 7 divides 7
}

TEST_CASE("condition C") {
  RoleAssignment ra{{0, 1, 2}, {3, 4}};
  CHECK_FALSE(cond_C(cq(14, {3, 5, 13, 2, 4}), ra, 8));  // n-1 = 7 outside Gamma_7
  // f(2) + 5 = 6 > 5 = f(4)
  CHECK_FALSE(cond_C(cq(19, {3, 4, 5, 7, 18}), ra, 3));
  // q = 2: f(1) + 5 = 5 > 3 = f(3)
  CHECK_FALSE(cond_C(cq(16, {1, 5, 9, 8, 8}), ra, 2));
  CHECK_THROWS_AS(cond_C(cq(19, {3, 4, 5, 7, 18}), ra, 1), std::invalid_argument);
}

TEST_CASE("A-set membership levels") {
  SUBCASE("level 4 with margin, witnessed by a 2a1+a5 disjunct") {
    auto rep = in_A(cq(17, {2, 3, 5, 7, 16}), 4, Rational(1, 13));
    CHECK(rep.member);
    CHECK(rep.bar);
    CHECK(rep.mld_value == Rational(33, 17));
    bool seen = false;
    for (const auto& w : rep.roles)
      for (Disjunct d : w.fired)
        if (d == Disjunct::kAltTwoA1A5) seen = true;
    CHECK(seen);
  }
  SUBCASE("level 5 is the isolated subset") {
    CHECK(in_A(cq(19, {3, 4, 5, 7, 18}), 5).member);
    CHECK_FALSE(in_A(cq(16, {1, 5, 9, 8, 8}), 5).member);
  }
  SUBCASE("a tuple passing level 3 but failing every level-4 disjunct") {
    CHECK(in_A(cq(16, {1, 5, 9, 8, 8}), 3).member);
    CHECK_FALSE(in_A(cq(16, {1, 5, 9, 8, 8}), 4).member);
  }
  SUBCASE("level 1 needs mld < 2 and weights below r") {
    CHECK_FALSE(in_A(cq(1, {1, 1, 1, 1, 1}), 1).member);
    CHECK(in_A(cq(13, {3, 4, 5, 1, 12}), 1).member);
  }
  CHECK_THROWS_AS(in_A(cq(5, {1, 2, 3}), 1), std::invalid_argument);
  CHECK_THROWS_AS(in_A(cq(5, {1, 1, 1, 1, 1}), 6), std::invalid_argument);
}

TEST_CASE("reduce on the documented singularities") {
  CyclicQuotient fixed_point = cq(13, {3, 4, 5, 1, 12});
  CHECK(reduce(fixed_point) == fixed_point);
  CHECK(reduce(cq(13, {6, 8, 10, 2, 11})) == fixed_point);
  CHECK(reduce(cq(1, {1, 1, 1})) == cq(1, {1, 1, 1}));
}

TEST_CASE("reduce preserves mld and lands on the bar form") {
  std::mt19937 rng(103);
  for (int i = 0; i < 300; ++i) {
    CyclicQuotient c = random_cq(rng);
    CyclicQuotient red = reduce(c);
    CHECK(mld(red).value == mld(c).value);
    CHECK(mld(red).value == Rational(red.weight_sum(), red.r));
    CHECK(c.r % red.r == 0);
  }
}

TEST_CASE("relabel") {
  CHECK(relabel(cq(13, {3, 4, 5, 1, 12}), 2) == cq(13, {6, 8, 10, 2, 11}));
  CyclicQuotient c = cq(13, {3, 4, 5, 1, 12});
  CHECK(relabel(c, 1) == c);
  CHECK_THROWS_AS(relabel(c, 13), std::invalid_argument);
}

TEST_CASE("mld is invariant under permutation and relabeling") {
  std::mt19937 rng(104);
  for (int i = 0; i < 300; ++i) {
    CyclicQuotient c = random_cq(rng);
    Rational base = mld(c).value;

    std::vector<long> shuffled = c.weights;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(mld(CyclicQuotient(c.r, shuffled)).value == base);

    std::uniform_int_distribution<long> dj(1, c.r);
    long j = dj(rng);
    while (std::gcd(j, c.r) != 1) j = dj(rng);
    CHECK(mld(relabel(c, j)).value == base);
  }
}

TEST_CASE("associated function symmetry f(n) + f(r-n) on the gcd-structured tuples") {
  std::mt19937 rng(105);
  int tested = 0;
  while (tested < 120) {
    std::uniform_int_distribution<long> dr(3, 60);
    long r = dr(rng);
    std::vector<long> coprime;
    for (long a = 1; a < r; ++a)
      if (std::gcd(a, r) == 1) coprime.push_back(a);
    if (coprime.empty()) continue;
    std::uniform_int_distribution<std::size_t> dc(0, coprime.size() - 1);
    std::uniform_int_distribution<long> dw(1, r - 1);
    long a4 = dw(rng);
    std::vector<long> candidates5;
    for (long a = 1; a < r; ++a)
      if (std::gcd(a, r) == std::gcd(a4, r)) candidates5.push_back(a);
    std::uniform_int_distribution<std::size_t> d5(0, candidates5.size() - 1);
    CyclicQuotient c(r, {coprime[dc(rng)], coprime[dc(rng)], coprime[dc(rng)], a4,
                         candidates5[d5(rng)]});
    RoleAssignment ra{{0, 1, 2}, {3, 4}};
    REQUIRE(roles_valid(c, ra));
    long q = assoc_denominator(c, ra);
    if (q < 2) continue;
    for (long n = 1; n <= r - 1; ++n) {
      if (!in_gamma(q, n)) continue;
      CHECK(f_value(c, n) + f_value(c, r - n) == c.weight_sum() - 5);
    }
    ++tested;
  }
}

TEST_CASE("condition D pins the mld defect into the documented window") {
  // Whenever D(n,c) holds on a bar member, (c-1)/(n+1) <= 2-mld <= c/(n-1).
  auto members = enumerate_a_members(2, Rational(1, 13), 1, 51, true);
  REQUIRE(members.size() == 10);
  for (const auto& entry : members) {
    const CyclicQuotient& c = entry.cq;
    RoleAssignment ra = first_roles(c);
    Rational eps = Rational(2) - entry.membership.mld_value;
    long q = assoc_denominator(c, ra);
    for (long n = 2; n <= c.r - 1; ++n) {
      if (!in_gamma(q, n)) continue;
      for (long cc = 1; cc <= 4; ++cc) {
        if (!cond_D(c, ra, n, cc)) continue;
        CHECK(Rational(cc - 1, n + 1) <= eps);
        CHECK(eps <= Rational(cc, n - 1));
      }
    }
  }
}

TEST_CASE("condition C never holds below r on the sum-coprime bar members") {
  auto small = enumerate_a_members(3, std::nullopt, 1, 24, true, 2);
  auto margin = enumerate_a_members(2, Rational(1, 13), 25, 51, true, 2);
  for (const auto& pool : {small, margin}) {
    for (const auto& entry : pool) {
      const CyclicQuotient& c = entry.cq;
      auto rep = in_A(c, 3);
      if (!rep.member || !rep.bar) continue;
      for (const auto& witness : rep.roles) {
        for (long n = 2; n + 1 < c.r; ++n) CHECK_FALSE(cond_C(c, witness.roles, n));
      }
    }
  }
}

TEST_CASE("B-set membership on the documented cases") {
  auto m = in_B(19, {1, 12, 15, 16}, 5);
  REQUIRE(m.has_value());
  CHECK(m->k0 == 18);
  CHECK(m->is_bar);

  auto m2 = in_B(17, {1, 10, 12, 14}, 2);
  REQUIRE(m2.has_value());
  CHECK(m2->k0 == 16);
  CHECK(m2->is_bar);

  auto m3 = in_B(14, {1, 9, 11, 10}, 2);
  REQUIRE(m3.has_value());
  CHECK(m3->k0 == 13);
  CHECK(m3->is_bar);

  CHECK_FALSE(in_B(19, {1, 2, 3, 4}, 5).has_value());
  CHECK_THROWS_AS(in_B(1, {1, 1, 1, 1}, 0), std::invalid_argument);
}

TEST_CASE("the exceptional index of a B-member is unique") {
  // Count candidates by direct fractional-part evaluation.
  auto count_candidates = [](long r, std::array<long, 4> w, long e) {
    int found = 0;
    for (long k0 = 1; k0 <= r - 1; ++k0) {
      if ((k0 * e) % r == 0) continue;
      Rational v(0);
      for (long a : w) v += frac_part(Rational(k0 * a, r));
      v -= frac_part(Rational(k0 * e, r));
      if (v != Rational(k0, r)) continue;
      bool rest = true;
      for (long k = 1; k <= r - 1 && rest; ++k) {
        if (k == k0) continue;
        Rational u(0);
        for (long a : w) u += frac_part(Rational(k * a, r));
        u -= frac_part(Rational(k * e, r));
        rest = u >= Rational(1);
      }
      if (rest) ++found;
    }
    return found;
  };
  CHECK(count_candidates(19, {1, 12, 15, 16}, 5) == 1);
  CHECK(count_candidates(17, {1, 10, 12, 15}, 3) == 1);
  std::mt19937 rng(106);
  for (int i = 0; i < 60; ++i) {
    std::uniform_int_distribution<long> dr(2, 24);
    long r = dr(rng);
    std::uniform_int_distribution<long> dw(1, r - 1);
    std::array<long, 4> w{dw(rng), dw(rng), dw(rng), dw(rng)};
    long e = dw(rng);
    int direct = count_candidates(r, w, e);
    CHECK(direct <= 1);
    auto m = in_B(r, w, e);
    if (m) CHECK(direct == 1);
  }
}

TEST_CASE("growth bounds of the associated function on the bar members") {
  for (auto& [r, w] : std::vector<std::pair<long, std::vector<long>>>{
           {19, {3, 4, 5, 7, 18}}, {17, {2, 3, 5, 7, 16}}, {14, {3, 5, 13, 2, 4}}}) {
    CyclicQuotient c(r, w);
    CHECK(check_lemma_2_6(c, first_roles(c)));
  }
  // The precondition (bar membership) is reported distinctly.
  CyclicQuotient not_bar(13, {6, 8, 10, 2, 11});
  CHECK_THROWS_AS(check_lemma_2_6(not_bar, first_roles(not_bar)), std::invalid_argument);
}
