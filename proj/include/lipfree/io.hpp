#pragma once

#include <json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "lipfree/linear_map.hpp"
#include "lipfree/molecule.hpp"
#include "lipfree/real_line.hpp"
#include "lipfree/scalar.hpp"

namespace lipfree::io {

using nlohmann::json;

// {"space": {"dim": 1, "norm": "l2"}, "terms": [{"a": "2", "x": ["1"]}, ...]}
// Scalars may be strings ("3/4", "0.25") or JSON numbers; a non-integer number
// is read through its shortest decimal form. Throws FormatError.
Molecule<Rational> parse_molecule(std::string_view text);
Molecule<Rational> load_molecule(const std::string& path);

// {"breaks": ["-2", "0", "1"], "values": ["-1", "2"]}
StepFunction parse_step_function(std::string_view text);
StepFunction load_step_function(const std::string& path);

// "0;1;-1" or "0,0;1,0;0,1": points separated by ';', coordinates by ','.
std::vector<Point<Rational>> parse_points(std::string_view text, std::size_t dim);

std::string read_file(const std::string& path);

// Rationals print as strings, doubles as numbers.
json to_json(const Rational& q);
json to_json(double d);

template <class S>
json point_json(const Point<S>& x) {
  json a = json::array();
  for (const auto& c : x) a.push_back(to_json(c));
  return a;
}

json space_json(const Space& s);

template <class S>
json molecule_json(const Molecule<S>& m) {
  json terms = json::array();
  for (const auto& t : m.terms) terms.push_back({{"a", to_json(t.coeff)}, {"x", point_json(t.point)}});
  return {{"space", space_json(m.space)}, {"terms", std::move(terms)}};
}

json step_json(const StepFunction& s);

template <class S>
json matrix_json(const Matrix<S>& t) {
  json rows = json::array();
  for (std::size_t i = 0; i < t.rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < t.cols; ++j) row.push_back(to_json(t(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace lipfree::io
