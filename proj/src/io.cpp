#include "lipfree/io.hpp"

#include <fstream>
#include <sstream>

#include "lipfree/errors.hpp"
#include "lipfree/space.hpp"

namespace lipfree::io {

namespace {

// Line and column (1-based) of a byte offset.
std::pair<std::size_t, std::size_t> locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, column] = locate(text, e.byte);
    throw FormatError("malformed JSON", line, column);
  }
}

Rational scalar(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_integer()) return parse_rational(v.dump());
    if (v.is_number_float()) return parse_rational(format_double(v.get<double>()));
  } catch (const FormatError& e) {
    throw FormatError(where + ": " + e.what());
  }
  throw FormatError(where + ": expected a number or numeric string");
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw FormatError(where + ": missing \"" + key + "\"");
  return obj.at(key);
}

std::vector<Rational> scalar_list(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw FormatError(where + ": expected an array");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(scalar(arr[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

Molecule<Rational> parse_molecule(std::string_view text) {
  json doc = parse_json(text);
  const json& sp = field(doc, "space", "molecule");
  const json& dim = field(sp, "dim", "space");
  if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) throw FormatError("space.dim must be a positive integer");
  const json& nm = field(sp, "norm", "space");
  if (!nm.is_string()) throw FormatError("space.norm must be a string");
  Space space;
  try {
    space = Space(dim.get<std::size_t>(), parse_norm_kind(nm.get<std::string>()));
  } catch (const Error& e) {
    throw FormatError(std::string("space: ") + e.what());
  }
  const json& terms = field(doc, "terms", "molecule");
  if (!terms.is_array()) throw FormatError("terms must be an array");
  Molecule<Rational> m(space);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string where = "terms[" + std::to_string(i) + "]";
    Rational a = scalar(field(terms[i], "a", where), where + ".a");
    Point<Rational> x = scalar_list(field(terms[i], "x", where), where + ".x");
    if (x.size() != space.dim) {
      throw FormatError(where + ".x has " + std::to_string(x.size()) + " coordinates, space has dim " +
                        std::to_string(space.dim));
    }
    m.terms.push_back({std::move(a), std::move(x)});
  }
  return m;
}

StepFunction parse_step_function(std::string_view text) {
  json doc = parse_json(text);
  StepFunction s{scalar_list(field(doc, "breaks", "step function"), "breaks"),
                 scalar_list(field(doc, "values", "step function"), "values")};
  if (s.breaks.empty() && s.values.empty()) return s;
  return canonicalize(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Molecule<Rational> load_molecule(const std::string& path) { return parse_molecule(read_file(path)); }

StepFunction load_step_function(const std::string& path) { return parse_step_function(read_file(path)); }

std::vector<Point<Rational>> parse_points(std::string_view text, std::size_t dim) {
  std::vector<Point<Rational>> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(';', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view item = text.substr(start, end - start);
    Point<Rational> p;
    std::size_t c = 0;
    while (c <= item.size()) {
      std::size_t comma = item.find(',', c);
      if (comma == std::string_view::npos) comma = item.size();
      try {
        p.push_back(parse_rational(item.substr(c, comma - c)));
      } catch (const FormatError& e) {
        throw FormatError("point " + std::to_string(out.size() + 1) + ": " + e.what(), 1, start + c + 1);
      }
      c = comma + 1;
    }
    if (p.size() != dim) {
      throw FormatError("point " + std::to_string(out.size() + 1) + " has " + std::to_string(p.size()) +
                            " coordinates, expected " + std::to_string(dim),
                        1, start + 1);
    }
    out.push_back(std::move(p));
    start = end + 1;
  }
  return out;
}

json to_json(const Rational& q) { return format_rational(q); }

json to_json(double d) { return d; }

json space_json(const Space& s) { return {{"dim", s.dim}, {"norm", std::string(to_string(s.norm))}}; }

json step_json(const StepFunction& s) {
  json b = json::array();
  json v = json::array();
  for (const auto& q : s.breaks) b.push_back(to_json(q));
  for (const auto& q : s.values) v.push_back(to_json(q));
  return {{"breaks", std::move(b)}, {"values", std::move(v)}};
}

}  // namespace lipfree::io
