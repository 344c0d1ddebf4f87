#pragma once

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "mldlab/rational.hpp"

namespace mldlab {

// The cyclic quotient singularity 1/r(a_1,...,a_d): affine d-space divided
// by the order-r cyclic group acting diagonally with the given weights.
// Weights are kept in [1, r]; a weight equal to r is allowed here (it is
// needed for boundary arguments) but rejected by the associated-function
// operations, which require all a_i < r.
struct CyclicQuotient {
  long r = 1;
  std::vector<long> weights;

  CyclicQuotient(long r_, std::vector<long> weights_);
  int dim() const { return static_cast<int>(weights.size()); }
  long weight_sum() const;

  friend bool operator==(const CyclicQuotient&, const CyclicQuotient&) = default;
};

// Result of the toric minimum: the exact mld value together with every
// group element index j in [1, r] attaining it.
struct MldResult {
  Rational value;
  std::vector<long> witnesses;  // sorted, nonempty
};

// Which positions of a 5-tuple play the three coprime weights a_1,a_2,a_3
// and which ordered pair plays (a_4, a_5).  Positions are 0-based.
struct RoleAssignment {
  std::array<int, 3> coprime_slots;
  std::array<int, 2> paired_slots;

  friend bool operator==(const RoleAssignment&, const RoleAssignment&) = default;
};

// The divisibility disjuncts accepted at membership level 4.  The first
// three are the set definition's list, the alt_* three the variant stated
// with the classification theorem; membership accepts the union and
// reports which fired.
enum class Disjunct {
  kA1A4A5,          // r | a1+a4+a5
  kTwoA4A5,         // r | 2a4+a5
  kTwoA1A5GcdLe2,   // r | 2a1+a5 and gcd(a4,r) <= 2
  kAltA1A2A5,       // r | a1+a2+a5
  kAltTwoA1A5,      // r | 2a1+a5
  kAltTwoA4A5Gcd2,  // r | 2a4+a5 and gcd(a4,r) = gcd(a5,r) <= 2
};

const char* disjunct_name(Disjunct d);

struct RoleWitness {
  RoleAssignment roles;
  std::vector<Disjunct> fired;  // empty below level 4
};

// Membership report for the A-set hierarchy (levels 1..5).
struct AMembership {
  bool member = false;
  bool bar = false;  // member and mld equals (sum of weights)/r
  Rational mld_value;
  std::vector<RoleWitness> roles;
};

// Membership record for the B-set of 5-dimensional quotients
// 1/r(a_1,...,a_4,-e), together with its exceptional index k0.
struct BMembership {
  long r = 0;
  std::array<long, 4> weights{};  // residues mod r, in [0, r-1]
  long e = 0;                     // residue mod r, in [0, r-1]
  long k0 = 0;                    // unique index in [1, r-1]
  bool is_bar = false;            // gcd(k0, r) == 1
};

// --- operations -----------------------------------------------------------

// Exact toric minimum: min over j in [1,r] of sum_i (1 + j*a_i/r - ceil(j*a_i/r)),
// with all minimizing j listed.  j = r contributes dim (every term is 1).
MldResult mld(const CyclicQuotient& cq);

// Integer kernel behind mld(): minimum over j in [1, r] of
// sum_i (((j*a_i - 1) mod r) + 1), i.e. r times the toric sum.  When
// bail_below > 0 the scan stops at the first partial minimum strictly below
// it and returns that value; callers use this to discard candidates early.
long mld_numerator(long r, std::span<const long> weights, long bail_below = 0);

// Associated function f(n) = sum_i floor(n * a_i / r).  Requires all a_i < r.
long f_value(const CyclicQuotient& cq, long n);

// True iff the assignment partitions {0..4} and has the required gcd shape:
// gcd(a_i, r) = 1 on the coprime slots and gcd(a_4, r) = gcd(a_5, r).
bool roles_valid(const CyclicQuotient& cq, const RoleAssignment& roles);

// All valid role assignments of a 5-dimensional quotient (at most 20).
std::vector<RoleAssignment> valid_role_assignments(const CyclicQuotient& cq);

// Associated denominator q = r / gcd(a_4, r).  Throws if roles are invalid.
long assoc_denominator(const CyclicQuotient& cq, const RoleAssignment& roles);

// Condition D(n,c): n in Gamma_q and f(n) = 2n-2-c.
bool cond_D(const CyclicQuotient& cq, const RoleAssignment& roles, long n, long c);

// Condition C(n): n-1, n+1 in Gamma_q and f(n-1) + 5 <= f(n+1).  Requires n >= 2.
bool cond_C(const CyclicQuotient& cq, const RoleAssignment& roles, long n);

// Membership in the level-`level` A-set (5-dimensional quotients only).
// When eps is given, additionally requires mld > 2 - eps.
AMembership in_A(const CyclicQuotient& cq, int level, const std::optional<Rational>& eps = {});

// mld-preserving reduction: with j the smallest minimizing index,
// r' = r/gcd(j,r) and a_i' = r' * (1 + j*a_i/r - ceil(j*a_i/r)).  The result
// satisfies mld = (sum of weights)/r and r' | r.
CyclicQuotient reduce(const CyclicQuotient& cq);

// Weight relabeling a_i -> j*a_i mod r (residue 0 maps to r).  Requires
// gcd(j, r) = 1; this is a group automorphism, so mld is unchanged.
CyclicQuotient relabel(const CyclicQuotient& cq, long j);

// B-set membership test for 1/r(a_1..a_4, -e).  Weights and e are normalized
// mod r; the coprime/a_4 roles and the divisibility disjunct are searched
// over all slot permutations.  Returns the record with the unique k0 when
// every bullet holds, nullopt otherwise.
std::optional<BMembership> in_B(long r, std::array<long, 4> weights, long e);

// Checks 2n-3-(n+1)*eps <= f(n) <= 2n-2-(n-1)*eps for every n in
// [2, r-1] intersect Gamma_q, where eps = 2 - mld.  Requires cq in
// bar-A(2) under `roles` (throws std::invalid_argument otherwise, so a
// precondition violation is distinguishable from an inequality failure).
bool check_lemma_2_6(const CyclicQuotient& cq, const RoleAssignment& roles);

}  // namespace mldlab
