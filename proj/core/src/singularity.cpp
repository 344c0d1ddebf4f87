#include "mldlab/singularity.hpp"

#include <algorithm>
#include <numeric>

namespace mldlab {

namespace {

// Largest r for which the incremental residue kernel below cannot overflow:
// running residues stay < 2r and the 5-term sums < 8r.
constexpr long kMaxOrder = 1L << 60;

long checked_gcd(long a, long r) { return std::gcd(a, r); }

}  // namespace

CyclicQuotient::CyclicQuotient(long r_, std::vector<long> weights_)
    : r(r_), weights(std::move(weights_)) {
  if (r < 1) throw std::invalid_argument("CyclicQuotient: r must be positive");
  if (r > kMaxOrder) throw std::invalid_argument("CyclicQuotient: r too large");
  if (weights.empty()) throw std::invalid_argument("CyclicQuotient: dim must be >= 1");
  for (long a : weights)
    if (a < 1 || a > r)
      throw std::invalid_argument("CyclicQuotient: weights must lie in [1, r]");
}

long CyclicQuotient::weight_sum() const {
  return std::accumulate(weights.begin(), weights.end(), 0L);
}

long mld_numerator(long r, std::span<const long> weights, long bail_below) {
  // Incremental residues m_i = (j * a_i) mod r; each step only adds a_i.
  // The term of the toric sum at slot i is m_i, read as r when m_i = 0.
  std::array<long, 16> small;
  std::vector<long> big;
  long* m;
  std::size_t d = weights.size();
  if (d <= small.size()) {
    m = small.data();
  } else {
    big.resize(d);
    m = big.data();
  }
  for (std::size_t i = 0; i < d; ++i) m[i] = weights[i] % r;
  long best = 0;
  for (std::size_t i = 0; i < d; ++i) best += (m[i] == 0 ? r : m[i]);
  if (bail_below > 0 && best < bail_below) return best;
  for (long j = 2; j <= r; ++j) {
    long s = 0;
    for (std::size_t i = 0; i < d; ++i) {
      m[i] += weights[i];
      if (m[i] >= r) m[i] -= r;
      s += (m[i] == 0 ? r : m[i]);
    }
    if (s < best) {
      best = s;
      if (bail_below > 0 && best < bail_below) return best;
    }
  }
  return best;
}

MldResult mld(const CyclicQuotient& cq) {
  const long r = cq.r;
  std::vector<long> m(cq.weights.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = cq.weights[i] % r;
  long best = 0;
  std::vector<long> witnesses;
  for (long j = 1; j <= r; ++j) {
    long s = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (j > 1) {
        m[i] += cq.weights[i];
        if (m[i] >= r) m[i] -= r;
      }
      s += (m[i] == 0 ? r : m[i]);
    }
    if (j == 1 || s < best) {
      best = s;
      witnesses.assign(1, j);
    } else if (s == best) {
      witnesses.push_back(j);
    }
  }
  return MldResult{Rational(best, r), std::move(witnesses)};
}

long f_value(const CyclicQuotient& cq, long n) {
  if (n < 1) throw std::invalid_argument("f_value: n must be positive");
  for (long a : cq.weights)
    if (a >= cq.r)
      throw std::invalid_argument(
          "f_value: associated point must lie in (0,1)^d (all weights < r)");
  const long r = cq.r;
  long total = 0;
  const long q = n / r, s = n % r;
  for (long a : cq.weights) total += q * a + (s * a) / r;
  return total;
}

bool roles_valid(const CyclicQuotient& cq, const RoleAssignment& roles) {
  if (cq.dim() != 5) return false;
  std::array<bool, 5> seen{};
  auto mark = [&](int idx) {
    if (idx < 0 || idx >= 5 || seen[idx]) return false;
    seen[idx] = true;
    return true;
  };
  for (int i : roles.coprime_slots)
    if (!mark(i)) return false;
  for (int i : roles.paired_slots)
    if (!mark(i)) return false;
  for (int i : roles.coprime_slots)
    if (checked_gcd(cq.weights[i], cq.r) != 1) return false;
  return checked_gcd(cq.weights[roles.paired_slots[0]], cq.r) ==
         checked_gcd(cq.weights[roles.paired_slots[1]], cq.r);
}

std::vector<RoleAssignment> valid_role_assignments(const CyclicQuotient& cq) {
  std::vector<RoleAssignment> out;
  if (cq.dim() != 5) return out;
  for (int p4 = 0; p4 < 5; ++p4) {
    for (int p5 = 0; p5 < 5; ++p5) {
      if (p4 == p5) continue;
      RoleAssignment ra;
      ra.paired_slots = {p4, p5};
      int k = 0;
      for (int i = 0; i < 5; ++i)
        if (i != p4 && i != p5) ra.coprime_slots[k++] = i;
      if (roles_valid(cq, ra)) out.push_back(ra);
    }
  }
  return out;
}

long assoc_denominator(const CyclicQuotient& cq, const RoleAssignment& roles) {
  if (!roles_valid(cq, roles))
    throw std::invalid_argument("assoc_denominator: invalid role assignment");
  return cq.r / checked_gcd(cq.weights[roles.paired_slots[0]], cq.r);
}

bool cond_D(const CyclicQuotient& cq, const RoleAssignment& roles, long n, long c) {
  const long q = assoc_denominator(cq, roles);
  if (q >= 2 && !in_gamma(q, n)) return false;
  return f_value(cq, n) == 2 * n - 2 - c;
}

bool cond_C(const CyclicQuotient& cq, const RoleAssignment& roles, long n) {
  if (n < 2) throw std::invalid_argument("cond_C: n must be >= 2");
  const long q = assoc_denominator(cq, roles);
  if (q >= 2 && (!in_gamma(q, n - 1) || !in_gamma(q, n + 1))) return false;
  return f_value(cq, n - 1) + 5 <= f_value(cq, n + 1);
}

const char* disjunct_name(Disjunct d) {
  switch (d) {
    case Disjunct::kA1A4A5: return "a1+a4+a5";
    case Disjunct::kTwoA4A5: return "2a4+a5";
    case Disjunct::kTwoA1A5GcdLe2: return "2a1+a5&gcd(a4)<=2";
    case Disjunct::kAltA1A2A5: return "a1+a2+a5";
    case Disjunct::kAltTwoA1A5: return "2a1+a5";
    case Disjunct::kAltTwoA4A5Gcd2: return "2a4+a5&gcd<=2";
  }
  return "?";
}

namespace {

std::vector<Disjunct> fired_disjuncts(const CyclicQuotient& cq, const RoleAssignment& ra) {
  const long r = cq.r;
  const long w4 = cq.weights[ra.paired_slots[0]];
  const long w5 = cq.weights[ra.paired_slots[1]];
  const long g4 = checked_gcd(w4, r);
  std::array<long, 3> cop{cq.weights[ra.coprime_slots[0]], cq.weights[ra.coprime_slots[1]],
                          cq.weights[ra.coprime_slots[2]]};
  std::vector<Disjunct> fired;
  auto divides = [r](long v) { return v % r == 0; };
  if (std::any_of(cop.begin(), cop.end(), [&](long a1) { return divides(a1 + w4 + w5); }))
    fired.push_back(Disjunct::kA1A4A5);
  if (divides(2 * w4 + w5)) fired.push_back(Disjunct::kTwoA4A5);
  bool two_a1_a5 = std::any_of(cop.begin(), cop.end(), [&](long a1) { return divides(2 * a1 + w5); });
  if (two_a1_a5 && g4 <= 2) fired.push_back(Disjunct::kTwoA1A5GcdLe2);
  bool a1_a2_a5 = false;
  for (int i = 0; i < 3 && !a1_a2_a5; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (divides(cop[i] + cop[j] + w5)) { a1_a2_a5 = true; break; }
  if (a1_a2_a5) fired.push_back(Disjunct::kAltA1A2A5);
  if (two_a1_a5) fired.push_back(Disjunct::kAltTwoA1A5);
  if (divides(2 * w4 + w5) && g4 <= 2) fired.push_back(Disjunct::kAltTwoA4A5Gcd2);
  return fired;
}

}  // namespace

AMembership in_A(const CyclicQuotient& cq, int level, const std::optional<Rational>& eps) {
  if (cq.dim() != 5) throw std::invalid_argument("in_A: dim must be 5");
  if (level < 1 || level > 5) throw std::invalid_argument("in_A: level must be in [1,5]");

  AMembership rep;
  MldResult m = mld(cq);
  rep.mld_value = m.value;

  bool base = std::all_of(cq.weights.begin(), cq.weights.end(),
                          [&](long a) { return a < cq.r; }) &&
              m.value < Rational(2);
  if (eps) base = base && m.value > Rational(2) - *eps;

  bool isolated = std::all_of(cq.weights.begin(), cq.weights.end(),
                              [&](long a) { return checked_gcd(a, cq.r) == 1; });
  bool sum_coprime = checked_gcd(cq.weight_sum() % cq.r, cq.r) == 1 ||
                     (cq.weight_sum() % cq.r == 0 && cq.r == 1);

  auto valid = valid_role_assignments(cq);
  if (base) {
    for (const auto& ra : valid) {
      if (level >= 3 && !sum_coprime) continue;
      RoleWitness w{ra, {}};
      if (level >= 4) {
        w.fired = fired_disjuncts(cq, ra);
        if (w.fired.empty()) continue;
      }
      rep.roles.push_back(w);
    }
  }

  switch (level) {
    case 1: rep.member = base; break;
    case 2: rep.member = base && !valid.empty(); break;
    case 3:
    case 4: rep.member = base && !rep.roles.empty(); break;
    case 5: rep.member = base && isolated; break;
  }
  rep.bar = rep.member && m.value == Rational(cq.weight_sum(), cq.r);
  return rep;
}

CyclicQuotient reduce(const CyclicQuotient& cq) {
  MldResult m = mld(cq);
  const long j = m.witnesses.front();
  const long g = checked_gcd(j, cq.r);
  const long rp = cq.r / g;
  std::vector<long> wp(cq.weights.size());
  for (std::size_t i = 0; i < wp.size(); ++i) {
    long residue = ((j % cq.r) * (cq.weights[i] % cq.r)) % cq.r;
    long term = residue == 0 ? cq.r : residue;  // r * (1 + j*a_i/r - ceil(j*a_i/r))
    wp[i] = term / g;
  }
  return CyclicQuotient(rp, std::move(wp));
}

CyclicQuotient relabel(const CyclicQuotient& cq, long j) {
  if (j < 1 || checked_gcd(j, cq.r) != 1)
    throw std::invalid_argument("relabel: j must be coprime to r");
  std::vector<long> wp(cq.weights.size());
  for (std::size_t i = 0; i < wp.size(); ++i) {
    long residue = ((j % cq.r) * (cq.weights[i] % cq.r)) % cq.r;
    wp[i] = residue == 0 ? cq.r : residue;
  }
  return CyclicQuotient(cq.r, std::move(wp));
}

std::optional<BMembership> in_B(long r, std::array<long, 4> weights, long e) {
  if (r < 2) throw std::invalid_argument("in_B: r must be >= 2");
  for (long& w : weights) w = ((w % r) + r) % r;
  e = ((e % r) + r) % r;

  const long ge = checked_gcd(e, r);
  long wsum = weights[0] + weights[1] + weights[2] + weights[3];
  if (checked_gcd(((wsum - e) % r + r) % r, r) != 1) return std::nullopt;

  // Role search: one slot plays a_4 (gcd tied to e), the rest must be coprime
  // to r; the divisibility disjunct is checked over the same permutations.
  bool role_ok = false;
  for (int p4 = 0; p4 < 4 && !role_ok; ++p4) {
    if (checked_gcd(weights[p4], r) != ge) continue;
    std::array<long, 3> cop;
    int k = 0;
    bool coprime_ok = true;
    for (int i = 0; i < 4; ++i) {
      if (i == p4) continue;
      if (checked_gcd(weights[i], r) != 1) coprime_ok = false;
      cop[k++] = weights[i];
    }
    if (!coprime_ok) continue;
    auto divides = [r](long v) { return ((v % r) + r) % r == 0; };
    bool disjunct = divides(2 * weights[p4] - e);
    for (int i = 0; i < 3 && !disjunct; ++i) {
      if (divides(2 * cop[i] - e) && ge <= 2) disjunct = true;
      for (int j = i + 1; j < 3 && !disjunct; ++j)
        if (divides(cop[i] + cop[j] - e)) disjunct = true;
    }
    role_ok = disjunct;
  }
  if (!role_ok) return std::nullopt;

  // k0 scan.  v(k) = sum_i {k a_i / r} - {k e / r}, scaled by r; the
  // membership shape forces at most one k with v(k) < r.
  long k0 = -1;
  std::array<long, 4> mw{};
  long me = 0;
  for (long k = 1; k <= r - 1; ++k) {
    long v = 0;
    for (int i = 0; i < 4; ++i) {
      mw[i] += weights[i];
      if (mw[i] >= r) mw[i] -= r;
      v += mw[i];
    }
    me += e;
    if (me >= r) me -= r;
    v -= me;
    if (v >= r) continue;
    // A low index: it must be the unique k0 and meet the equality bullet.
    if (k0 != -1) return std::nullopt;
    if (v != k) return std::nullopt;
    if (me == 0) return std::nullopt;  // r | k0 e
    k0 = k;
  }
  if (k0 == -1) return std::nullopt;

  BMembership out;
  out.r = r;
  out.weights = weights;
  out.e = e;
  out.k0 = k0;
  out.is_bar = checked_gcd(k0, r) == 1;
  return out;
}

bool check_lemma_2_6(const CyclicQuotient& cq, const RoleAssignment& roles) {
  if (!roles_valid(cq, roles))
    throw std::invalid_argument("check_lemma_2_6: invalid role assignment");
  for (long a : cq.weights)
    if (a >= cq.r) throw std::invalid_argument("check_lemma_2_6: weights must be < r");
  MldResult m = mld(cq);
  if (!(m.value < Rational(2)) || m.value != Rational(cq.weight_sum(), cq.r))
    throw std::invalid_argument("check_lemma_2_6: cq is not in bar-A(2) under these roles");

  const long q = assoc_denominator(cq, roles);
  const Rational eps = Rational(2) - m.value;
  for (long n = 2; n <= cq.r - 1; ++n) {
    if (q >= 2 && !in_gamma(q, n)) continue;
    Rational fn(f_value(cq, n));
    Rational lo = Rational(2 * n - 3) - Rational(n + 1) * eps;
    Rational hi = Rational(2 * n - 2) - Rational(n - 1) * eps;
    if (fn < lo || fn > hi) return false;
  }
  return true;
}

}  // namespace mldlab
