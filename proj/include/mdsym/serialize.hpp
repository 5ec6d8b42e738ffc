#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>

#include "mdsym/series.hpp"

namespace mdsym::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

struct Meta {
  std::string command;
  std::uint64_t seed = 0;
  double tolerance = 0.0;
};

// Integers that fit in int64 stay numbers; everything else becomes "num/den".
Json rational_to_json(const Rational& r);
Rational rational_from_json(const Json& j);

// One row {word, p, q, re, im} per nonzero coefficient, in word order.
Json series_rows(const CSeries& s, std::int64_t p, std::int64_t q);
// Same layout with "value" holding the exact coefficient.
Json series_rows(const QSeries& s, std::int64_t p, std::int64_t q);

Json document(const Meta& meta, Json rows);

// %.17g for every float.
std::string format_double(double x);
// Indented text with fixed float formatting; keys keep insertion order.
std::string write_structured(const Json& doc);
// Header from the keys of the first row. Nested values are written as compact text.
std::string write_csv(const Json& rows);
// Throws DomainError on malformed input.
Json read_structured(const std::string& text);

}  // namespace mdsym::io
