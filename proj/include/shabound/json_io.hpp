#pragma once

// JSON encodings shared by the CLI and the Python module. Every integer is
// written as a decimal string.

#include <json.hpp>

#include "shabound/search.hpp"

namespace shabound {

using Json = nlohmann::ordered_json;

Json encode(const Int& n);
Json encode(const Rat& x);
Json encode(std::size_t n);
Json encode(std::int64_t n);
Json encode(const Curve& e);
Json encode(const Point& pt);
Json encode(const Transform& w);
Json encode(const Poly& f);
Json encode(const std::vector<Int>& xs);
Json encode(const DescentSets& sets);
Json encode(const CharacterMatrixSpec& spec);
Json encode(const SandwichResult& s);
Json encode(const BoundReport& r);
Json encode(const FieldInvariants& f);
Json encode(const TheoremBudget& b);
Json encode(const DegreeBudget& b);
Json encode(const SearchRow& row);
Json encode(const SearchReport& report);

/// Integers from JSON numbers or decimal strings; `field` names the input
/// in ValidationError messages.
Int parse_int(const Json& j, const std::string& field);
/// "n", "n/d" or an integer JSON number.
Rat parse_rat(const Json& j, const std::string& field);
Curve parse_curve(const Json& j);
/// "O" or [x, y].
Point parse_point(const Json& j);
/// Coefficients constant term first.
Poly parse_poly(const Json& j, const std::string& field);
std::vector<Int> parse_int_list(const Json& j, const std::string& field);
/// Comma-separated integers; empty string gives an empty list.
std::vector<Int> parse_csv_ints(const std::string& s, const std::string& field);
SearchConstraints parse_constraints(const Json& j);

/// Parse text as JSON, turning syntax errors into ValidationError.
Json parse_json_text(const std::string& text, const std::string& field);

}  // namespace shabound
