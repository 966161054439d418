#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>

namespace lipfree {

using Rational = mpq_class;

enum class Mode { Exact, Float };

Mode parse_mode(std::string_view text);
std::string_view to_string(Mode mode);

// Reads LIPFREE_MODE; float when unset.
Mode default_mode();

// Parses "p/q", "-3", "0.125", "1.5e-3" exactly.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);
// Shortest round-trip representation.
std::string format_double(double d);

template <class S>
inline constexpr bool is_exact_v = std::is_same_v<S, Rational>;

template <class S>
S abs_value(const S& v) {
  if constexpr (is_exact_v<S>) {
    return Rational(abs(v));
  } else {
    return v < 0 ? -v : v;
  }
}

inline double to_double(double v) { return v; }
inline double to_double(const Rational& v) { return v.get_d(); }

template <class S>
S from_rational(const Rational& q) {
  if constexpr (is_exact_v<S>) {
    return q;
  } else {
    return q.get_d();
  }
}

// Exact for finite doubles in exact mode.
template <class S>
S from_double(double d) {
  if constexpr (is_exact_v<S>) {
    return Rational(d);
  } else {
    return d;
  }
}

template <class S>
S parse_scalar(std::string_view text) {
  if constexpr (is_exact_v<S>) {
    return parse_rational(text);
  } else {
    return parse_rational(text).get_d();
  }
}

inline std::string format_scalar(double d) { return format_double(d); }
inline std::string format_scalar(const Rational& q) { return format_rational(q); }

// Exact square root of a nonnegative rational when it is a perfect square.
bool exact_sqrt(const Rational& q, Rational& out);

}  // namespace lipfree
