#pragma once

#include <chrono>
#include <ostream>
#include <sstream>

#include "mldlab/json_io.hpp"
#include "mldlab/theorems.hpp"

namespace mldlab::detail {

using io::json;

class ReportBuilder {
 public:
  explicit ReportBuilder(std::string id) : start_(std::chrono::steady_clock::now()) {
    report_.id = std::move(id);
  }

  template <typename... Args>
  void mismatch(Args&&... args) {
    std::ostringstream os;
    (os << ... << args);
    report_.discrepancies.push_back(os.str());
  }

  void require(bool ok, const std::string& what) {
    if (!ok) report_.discrepancies.push_back(what);
  }

  json& expected() { return report_.expected; }
  json& actual() { return report_.actual; }
  bool clean() const { return report_.discrepancies.empty(); }

  TheoremReport finish() {
    auto elapsed = std::chrono::steady_clock::now() - start_;
    report_.runtime_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    report_.status = report_.discrepancies.empty() ? VerifyStatus::kVerified
                                                   : VerifyStatus::kFailed;
    return std::move(report_);
  }

 private:
  TheoremReport report_;
  std::chrono::steady_clock::time_point start_;
};

inline void progress(const RunOptions& opts, const std::string& line) {
  if (opts.progress != nullptr) (*opts.progress) << line << "\n" << std::flush;
}

// Closed-interval data used to compare solver boxes with printed answer
// tables: the half-open solver convention and the open printed convention
// agree up to closure.
struct ClosedBox {
  std::vector<Rational> lo, hi;

  static ClosedBox from_json(const json& j) {
    ClosedBox cb;
    for (const auto& iv : j) {
      cb.lo.push_back(Rational::parse(iv.at(0).get<std::string>()));
      cb.hi.push_back(Rational::parse(iv.at(1).get<std::string>()));
    }
    return cb;
  }

  bool contains_box(const Box& b) const {
    if (b.coords.size() != lo.size()) return false;
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (b.coords[i].lo < lo[i] || b.coords[i].hi > hi[i]) return false;
    return true;
  }

  std::vector<Rational> midpoint() const {
    std::vector<Rational> m;
    m.reserve(lo.size());
    for (std::size_t i = 0; i < lo.size(); ++i) m.push_back((lo[i] + hi[i]) / Rational(2));
    return m;
  }
};

// Sorted-list comparison of a solver box set against printed boxes: same
// count, each solver box inside the closure of its printed partner, each
// printed midpoint inside the solver set.
void compare_with_printed_boxes(ReportBuilder& rb, const std::string& label,
                                const BoxSet& got, const json& printed_boxes);

json canonical_tuple_json(long r, std::vector<long> weights);

}  // namespace mldlab::detail
