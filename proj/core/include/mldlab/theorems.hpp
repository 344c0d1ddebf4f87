#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "mldlab/rational.hpp"

namespace mldlab {

enum class VerifyStatus { kVerified, kFailed, kPartial };

const char* verify_status_name(VerifyStatus s);

// Structured result of one catalog check: the expected artifact (from the
// bundled data files), the recomputed one, and any differences between them.
struct TheoremReport {
  std::string id;
  VerifyStatus status = VerifyStatus::kFailed;
  nlohmann::json expected;
  nlohmann::json actual;
  std::vector<std::string> discrepancies;  // empty iff status == kVerified
  long runtime_ms = 0;
};

nlohmann::json report_to_json(const TheoremReport& r);

struct RunOptions {
  int jobs = 1;
  std::ostream* progress = nullptr;  // per-item progress lines, if set
  long gap3d_rmax = 200;
  long gap5d_rmax = 60;
};

// Appendix enumerations and solver-backed checks.
TheoremReport verify_thm_a1(const RunOptions& opts = {});
TheoremReport verify_thm_3_1(const RunOptions& opts = {});
TheoremReport verify_thm_a2(const RunOptions& opts = {});
TheoremReport verify_thm_a3(const RunOptions& opts = {});
TheoremReport verify_thm_a4(const RunOptions& opts = {});
TheoremReport verify_thm_a5(const RunOptions& opts = {});
TheoremReport verify_thm_a6(const RunOptions& opts = {});
TheoremReport verify_thm_d213(const RunOptions& opts = {});

// Quotient-with-twist classification checks.
TheoremReport verify_lemma_6_1_membership(const RunOptions& opts = {});
TheoremReport verify_lemma_6_2(const RunOptions& opts = {});

// Desk-scale gap sweeps: no isolated quotient may fall in the open interval
// between the bound and the canonical threshold.
TheoremReport desk_gap_threefold(long r_max, const RunOptions& opts = {});
TheoremReport desk_gap_5d_isolated(long r_max, const RunOptions& opts = {});

// Registry used by the CLI: ids are
//   a1 thm31 a2 a3 a4 a5 a6 d213 lemma61 lemma62 gap3d gap5d
const std::vector<std::string>& theorem_ids();
bool is_theorem_id(const std::string& id);
TheoremReport run_theorem(const std::string& id, const RunOptions& opts = {});

}  // namespace mldlab
