#include "mldlab/theorems.hpp"

#include <algorithm>
#include <map>

#include "theorems_util.hpp"

namespace mldlab {

const char* verify_status_name(VerifyStatus s) {
  switch (s) {
    case VerifyStatus::kVerified: return "verified";
    case VerifyStatus::kFailed: return "failed";
    case VerifyStatus::kPartial: return "partial";
  }
  return "?";
}

nlohmann::json report_to_json(const TheoremReport& r) {
  return nlohmann::json{{"id", r.id},
                        {"status", verify_status_name(r.status)},
                        {"expected", r.expected},
                        {"actual", r.actual},
                        {"discrepancies", r.discrepancies},
                        {"runtime_ms", r.runtime_ms}};
}

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids = {"a1",   "thm31",   "a2",      "a3",
                                               "a4",   "a5",      "a6",      "d213",
                                               "lemma61", "lemma62", "gap3d", "gap5d"};
  return ids;
}

bool is_theorem_id(const std::string& id) {
  const auto& ids = theorem_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

TheoremReport run_theorem(const std::string& id, const RunOptions& opts) {
  if (id == "a1") return verify_thm_a1(opts);
  if (id == "thm31") return verify_thm_3_1(opts);
  if (id == "a2") return verify_thm_a2(opts);
  if (id == "a3") return verify_thm_a3(opts);
  if (id == "a4") return verify_thm_a4(opts);
  if (id == "a5") return verify_thm_a5(opts);
  if (id == "a6") return verify_thm_a6(opts);
  if (id == "d213") return verify_thm_d213(opts);
  if (id == "lemma61") return verify_lemma_6_1_membership(opts);
  if (id == "lemma62") return verify_lemma_6_2(opts);
  if (id == "gap3d") return desk_gap_threefold(opts.gap3d_rmax, opts);
  if (id == "gap5d") return desk_gap_5d_isolated(opts.gap5d_rmax, opts);
  throw std::invalid_argument("unknown theorem id: " + id);
}

namespace detail {

void compare_with_printed_boxes(ReportBuilder& rb, const std::string& label, const BoxSet& got,
                                const json& printed_boxes) {
  std::vector<ClosedBox> want;
  for (const auto& pb : printed_boxes) want.push_back(ClosedBox::from_json(pb));
  if (got.boxes.size() != want.size()) {
    rb.mismatch(label, ": expected ", want.size(), " boxes, solver produced ",
                got.boxes.size());
    return;
  }
  // Both lists are sorted lexicographically (printed tables are listed in
  // increasing order; solver output is normalized), so compare pairwise.
  auto sorted = got.boxes;
  std::sort(sorted.begin(), sorted.end(), box_less);
  std::vector<std::size_t> order(want.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return want[a].lo < want[b].lo; });
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const ClosedBox& cb = want[order[i]];
    if (!cb.contains_box(sorted[i]))
      rb.mismatch(label, ": solver box ", i, " not inside the printed closure");
    if (!sorted[i].contains(cb.midpoint()))
      rb.mismatch(label, ": printed midpoint ", i, " not inside the solver box");
  }
}

json canonical_tuple_json(long r, std::vector<long> weights) {
  std::sort(weights.begin(), weights.end());
  return json{{"r", r}, {"weights", weights}};
}

}  // namespace detail

}  // namespace mldlab
