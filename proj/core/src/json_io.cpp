#include "mldlab/json_io.hpp"

#include "mldlab/errors.hpp"

namespace mldlab::io {

namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

long long_from(const json& j, const char* what) {
  if (!j.is_number_integer())
    throw ParseError(std::string("expected an integer for ") + what);
  return j.get<long>();
}

}  // namespace

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("invalid JSON");
  return j;
}

json to_json(const Rational& x) { return x.str(); }

Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw ParseError("rational values must be strings like \"p/q\"");
  return Rational::parse(j.get<std::string>());
}

json to_json(const CyclicQuotient& cq) {
  return json{{"r", cq.r}, {"weights", cq.weights}};
}

CyclicQuotient cyclic_quotient_from_json(const json& j) {
  long r = long_from(require(j, "r"), "r");
  const json& w = require(j, "weights");
  if (!w.is_array() || w.empty()) throw ParseError("'weights' must be a nonempty array");
  std::vector<long> weights;
  weights.reserve(w.size());
  for (const auto& e : w) weights.push_back(long_from(e, "weight"));
  try {
    return CyclicQuotient(r, std::move(weights));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

json to_json(const MldResult& m) {
  return json{{"value", m.value.str()}, {"witnesses", m.witnesses}};
}

json to_json(const RoleAssignment& ra) {
  return json{{"coprime_slots", ra.coprime_slots}, {"paired_slots", ra.paired_slots}};
}

json to_json(const AMembership& m) {
  json roles = json::array();
  for (const RoleWitness& w : m.roles) {
    json jw = to_json(w.roles);
    if (!w.fired.empty()) {
      json fired = json::array();
      for (Disjunct d : w.fired) fired.push_back(disjunct_name(d));
      jw["disjuncts"] = fired;
    }
    roles.push_back(std::move(jw));
  }
  return json{{"member", m.member},
              {"bar", m.bar},
              {"mld", m.mld_value.str()},
              {"roles", std::move(roles)}};
}

json to_json(const BMembership& m) {
  return json{{"r", m.r}, {"weights", m.weights}, {"e", m.e}, {"k0", m.k0}, {"is_bar", m.is_bar}};
}

json to_json(const Interval& iv) { return json::array({iv.lo.str(), iv.hi.str()}); }

Interval interval_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("an interval is a [lo, hi] pair");
  try {
    return Interval(rational_from_json(j[0]), rational_from_json(j[1]));
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
}

json to_json(const Box& b) {
  json out = json::array();
  for (const Interval& iv : b.coords) out.push_back(to_json(iv));
  return out;
}

Box box_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("a box is a nonempty array of intervals");
  Box b;
  for (const auto& e : j) b.coords.push_back(interval_from_json(e));
  return b;
}

json to_json(const BoxSet& bs) {
  json boxes = json::array();
  for (const Box& b : bs.boxes) boxes.push_back(to_json(b));
  return json{{"dim", bs.dim}, {"boxes", std::move(boxes)}};
}

BoxSet boxset_from_json(const json& j) {
  BoxSet bs;
  bs.dim = static_cast<int>(long_from(require(j, "dim"), "dim"));
  const json& boxes = require(j, "boxes");
  if (!boxes.is_array()) throw ParseError("'boxes' must be an array");
  for (const auto& e : boxes) {
    Box b = box_from_json(e);
    if (static_cast<int>(b.coords.size()) != bs.dim)
      throw ParseError("box dimension does not match 'dim'");
    bs.boxes.push_back(std::move(b));
  }
  return bs;
}

json to_json(const FloorSystem& sys) {
  json fixed = json::array();
  for (const Rational& v : sys.fixed) fixed.push_back(v.str());
  json eqs = json::array();
  for (const Equation& e : sys.equations) eqs.push_back(json{{"n", e.n}, {"rhs", e.rhs}});
  json filters = json::array();
  for (const PairSumFilter& f : sys.pair_sum_filters) {
    json sums = json::array();
    for (const Rational& s : f.sums) sums.push_back(s.str());
    filters.push_back(json{{"i", f.i}, {"j", f.j}, {"sums", std::move(sums)}});
  }
  return json{{"free_dim", sys.free_dim},
              {"fixed", std::move(fixed)},
              {"skip_modulus", sys.skip_modulus ? json(*sys.skip_modulus) : json(nullptr)},
              {"ordered", sys.ordered},
              {"equations", std::move(eqs)},
              {"pair_sum_filters", std::move(filters)}};
}

FloorSystem floor_system_from_json(const json& j) {
  FloorSystem sys;
  sys.free_dim = static_cast<int>(long_from(require(j, "free_dim"), "free_dim"));
  if (auto it = j.find("fixed"); it != j.end()) {
    if (!it->is_array()) throw ParseError("'fixed' must be an array");
    for (const auto& e : *it) sys.fixed.push_back(rational_from_json(e));
  }
  if (auto it = j.find("skip_modulus"); it != j.end() && !it->is_null())
    sys.skip_modulus = long_from(*it, "skip_modulus");
  if (auto it = j.find("ordered"); it != j.end()) {
    if (!it->is_boolean()) throw ParseError("'ordered' must be a boolean");
    sys.ordered = it->get<bool>();
  }
  const json& eqs = require(j, "equations");
  if (!eqs.is_array()) throw ParseError("'equations' must be an array");
  for (const auto& e : eqs)
    sys.equations.push_back(Equation{long_from(require(e, "n"), "equation index"),
                                     long_from(require(e, "rhs"), "equation rhs")});
  if (auto it = j.find("pair_sum_filters"); it != j.end()) {
    if (!it->is_array()) throw ParseError("'pair_sum_filters' must be an array");
    for (const auto& e : *it) {
      PairSumFilter f;
      f.i = static_cast<int>(long_from(require(e, "i"), "filter index"));
      f.j = static_cast<int>(long_from(require(e, "j"), "filter index"));
      const json& sums = require(e, "sums");
      if (!sums.is_array()) throw ParseError("'sums' must be an array");
      for (const auto& s : sums) f.sums.push_back(rational_from_json(s));
      sys.pair_sum_filters.push_back(std::move(f));
    }
  }
  try {
    validate_system(sys);
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
  return sys;
}

}  // namespace mldlab::io
