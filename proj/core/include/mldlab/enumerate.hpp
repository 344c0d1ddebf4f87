#pragma once

#include <optional>
#include <vector>

#include "mldlab/singularity.hpp"

namespace mldlab {

struct AEnumEntry {
  CyclicQuotient cq;      // weights sorted ascending (tuples are identified up to reorder)
  AMembership membership;
};

// All members of the level-`level` A-set with group order in [r_min, r_max],
// one entry per weight multiset, sorted by (r, weights).  When bar_only is
// set, only members whose mld equals (sum of weights)/r are returned, which
// also bounds the admissible weight sums and makes the sweep cheap.
std::vector<AEnumEntry> enumerate_a_members(int level, const std::optional<Rational>& eps,
                                            long r_min, long r_max, bool bar_only,
                                            int jobs = 1);

}  // namespace mldlab
