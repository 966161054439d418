#include "lipfree/real_line.hpp"

#include <algorithm>
#include <functional>

#include "lipfree/errors.hpp"

namespace lipfree {

namespace {

// Value of s on the open interval (lo, hi), which must not straddle a break of s.
Rational value_on(const StepFunction& s, const Rational& lo, const Rational& hi) {
  if (s.values.empty() || hi <= s.breaks.front() || lo >= s.breaks.back()) return Rational(0);
  auto it = std::upper_bound(s.breaks.begin(), s.breaks.end(), lo);
  std::size_t i = static_cast<std::size_t>(it - s.breaks.begin()) - 1;
  return s.values[i];
}

std::vector<Rational> merged_breaks(const StepFunction& a, const StepFunction& b) {
  std::vector<Rational> all = a.breaks;
  all.insert(all.end(), b.breaks.begin(), b.breaks.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return all;
}

StepFunction combine(const StepFunction& a, const StepFunction& b,
                     const std::function<Rational(const Rational&, const Rational&)>& op) {
  StepFunction r;
  r.breaks = merged_breaks(a, b);
  for (std::size_t i = 0; i + 1 < r.breaks.size(); ++i) {
    const auto& lo = r.breaks[i];
    const auto& hi = r.breaks[i + 1];
    r.values.push_back(op(value_on(a, lo, hi), value_on(b, lo, hi)));
  }
  if (r.values.empty()) r.breaks.clear();
  return canonicalize(r);
}

}  // namespace

StepFunction StepFunction::indicator(const Rational& a, const Rational& b, const Rational& c) {
  if (!(a < b)) throw FormatError("indicator interval must have a < b");
  return canonicalize(StepFunction{{a, b}, {c}});
}

StepFunction canonicalize(const StepFunction& s) {
  if (s.breaks.empty() && s.values.empty()) return s;
  if (s.values.size() + 1 != s.breaks.size()) {
    throw FormatError("step function needs exactly one more break than values");
  }
  for (std::size_t i = 1; i < s.breaks.size(); ++i) {
    if (!(s.breaks[i - 1] < s.breaks[i])) throw FormatError("step function breaks must be strictly increasing");
  }
  StepFunction r;
  r.breaks.push_back(s.breaks.front());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (!r.values.empty() && r.values.back() == s.values[i]) {
      r.breaks.back() = s.breaks[i + 1];
    } else {
      r.values.push_back(s.values[i]);
      r.breaks.push_back(s.breaks[i + 1]);
    }
  }
  std::size_t first = 0;
  while (first < r.values.size() && r.values[first] == 0) ++first;
  std::size_t last = r.values.size();
  while (last > first && r.values[last - 1] == 0) --last;
  if (first == last) return StepFunction{};
  StepFunction out;
  out.breaks.assign(r.breaks.begin() + static_cast<std::ptrdiff_t>(first),
                    r.breaks.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  out.values.assign(r.values.begin() + static_cast<std::ptrdiff_t>(first),
                    r.values.begin() + static_cast<std::ptrdiff_t>(last));
  return out;
}

StepFunction operator+(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const Rational& u, const Rational& v) { return Rational(u + v); });
}

StepFunction operator-(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const Rational& u, const Rational& v) { return Rational(u - v); });
}

StepFunction operator*(const Rational& c, const StepFunction& s) {
  StepFunction r = s;
  for (auto& v : r.values) v *= c;
  return canonicalize(r);
}

StepFunction multiply(const StepFunction& a, const StepFunction& b) {
  return combine(a, b, [](const Rational& u, const Rational& v) { return Rational(u * v); });
}

StepFunction phi_map(const Molecule<Rational>& m) {
  if (m.space.dim != 1) throw NotOneDimensional("phi_map needs a molecule on the real line");
  // Sum of a_i * sign(x_i) * chi between 0 and x_i: sweep the sorted endpoints.
  std::vector<Rational> ends{Rational(0)};
  for (const auto& t : m.terms) ends.push_back(t.point.at(0));
  std::sort(ends.begin(), ends.end());
  ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
  StepFunction r;
  r.breaks = ends;
  for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
    const Rational& lo = ends[i];
    const Rational& hi = ends[i + 1];
    Rational v(0);
    for (const auto& t : m.terms) {
      const Rational& x = t.point[0];
      if (x > 0 && lo >= 0 && hi <= x) v += t.coeff;
      if (x < 0 && hi <= 0 && lo >= x) v -= t.coeff;
    }
    r.values.push_back(v);
  }
  if (r.values.empty()) r.breaks.clear();
  return canonicalize(r);
}

Rational l1_norm(const StepFunction& s) {
  Rational acc(0);
  for (std::size_t i = 0; i < s.values.size(); ++i) acc += abs(s.values[i]) * (s.breaks[i + 1] - s.breaks[i]);
  return acc;
}

Rational integral(const StepFunction& s) {
  Rational acc(0);
  for (std::size_t i = 0; i < s.values.size(); ++i) acc += s.values[i] * (s.breaks[i + 1] - s.breaks[i]);
  return acc;
}

Rational pairing_via_derivative(const StepFunction& fprime, const Molecule<Rational>& m) {
  StepFunction image = phi_map(m);
  if (image.is_zero() || fprime.is_zero()) return Rational(0);
  // Stretch the outer intervals of fprime over the image's support.
  StepFunction ext = fprime;
  if (image.breaks.front() < ext.breaks.front()) {
    ext.breaks.insert(ext.breaks.begin(), image.breaks.front());
    ext.values.insert(ext.values.begin(), ext.values.front());
  }
  if (image.breaks.back() > ext.breaks.back()) {
    ext.breaks.push_back(image.breaks.back());
    ext.values.push_back(ext.values.back());
  }
  return integral(multiply(ext, image));
}

}  // namespace lipfree
