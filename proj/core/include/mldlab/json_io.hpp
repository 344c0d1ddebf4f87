#pragma once

#include <json.hpp>

#include "mldlab/boxsolver.hpp"
#include "mldlab/singularity.hpp"

namespace mldlab::io {

using json = nlohmann::json;

// Rational values travel as their canonical text form ("p/q", integers as
// "p"); decimals are rejected so inputs stay lossless.
json to_json(const Rational& x);
Rational rational_from_json(const json& j);

json to_json(const CyclicQuotient& cq);
CyclicQuotient cyclic_quotient_from_json(const json& j);

json to_json(const MldResult& m);
json to_json(const RoleAssignment& ra);
json to_json(const AMembership& m);
json to_json(const BMembership& m);

json to_json(const Interval& iv);
Interval interval_from_json(const json& j);
json to_json(const Box& b);
Box box_from_json(const json& j);
json to_json(const BoxSet& bs);
BoxSet boxset_from_json(const json& j);

json to_json(const FloorSystem& sys);
FloorSystem floor_system_from_json(const json& j);

// Parses text as JSON, mapping any syntax error to ParseError.
json parse_text(const std::string& text);

}  // namespace mldlab::io
