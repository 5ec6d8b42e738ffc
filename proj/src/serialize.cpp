#include "mdsym/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace mdsym::io {

namespace {

bool fits_int64(const mpz_class& z) {
  static const mpz_class lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const mpz_class hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return z >= lo && z <= hi;
}

void write_string(std::string& out, const std::string& s) {
  out += Json(s).dump();
}

void write_value(std::string& out, const Json& j, int indent) {
  const std::string pad(indent * 2, ' ');
  const std::string inner((indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write_string(out, k);
        out += ": ";
        write_value(out, v, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += inner;
        write_value(out, v, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string csv_cell(const Json& v) {
  std::string s;
  if (v.is_string()) {
    s = v.get<std::string>();
  } else if (v.is_number_float()) {
    return format_double(v.get<double>());
  } else {
    s = v.dump();
  }
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

Json rational_to_json(const Rational& r) {
  if (r.get_den() == 1 && fits_int64(r.get_num())) return static_cast<std::int64_t>(std::stoll(r.get_num().get_str()));
  return r.get_str();
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return make_rational(j.get<std::int64_t>());
  if (!j.is_string()) throw DomainError("rational must be an integer or a \"num/den\" string");
  try {
    Rational r(j.get<std::string>());
    if (r.get_den() == 0) throw DomainError("zero denominator");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw DomainError("malformed rational '" + j.get<std::string>() + "'");
  }
}

Json series_rows(const CSeries& s, std::int64_t p, std::int64_t q) {
  Json rows = Json::array();
  for (const auto& [w, c] : s.terms())
    rows.push_back({{"word", s.alphabet().format(w)}, {"p", p}, {"q", q}, {"re", c.real()}, {"im", c.imag()}});
  return rows;
}

Json series_rows(const QSeries& s, std::int64_t p, std::int64_t q) {
  Json rows = Json::array();
  for (const auto& [w, c] : s.terms())
    rows.push_back({{"word", s.alphabet().format(w)}, {"p", p}, {"q", q}, {"value", rational_to_json(c)}});
  return rows;
}

Json document(const Meta& meta, Json rows) {
  Json doc;
  doc["meta"] = {{"command", meta.command}, {"version", kVersion}, {"seed", meta.seed}, {"tolerance", meta.tolerance}};
  doc["rows"] = std::move(rows);
  return doc;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "\"nan\"";
  if (std::isinf(x)) return x > 0 ? "\"inf\"" : "\"-inf\"";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  // Keep floats recognizable as floats when read back.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

std::string write_structured(const Json& doc) {
  std::string out;
  write_value(out, doc, 0);
  out += "\n";
  return out;
}

std::string write_csv(const Json& rows) {
  if (!rows.is_array()) throw DomainError("csv output needs an array of rows");
  if (rows.empty()) return "";
  std::vector<std::string> cols;
  for (const auto& [k, v] : rows.front().items()) cols.push_back(k);
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ",";
      if (row.contains(cols[i])) out += csv_cell(row.at(cols[i]));
    }
    out += "\n";
  }
  return out;
}

Json read_structured(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DomainError(std::string("malformed structured text: ") + e.what());
  }
}

}  // namespace mdsym::io
