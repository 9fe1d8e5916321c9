// SPDX-License-Identifier: Apache-2.0
//
// ExtReal: an extended scalar for exponent arithmetic. Holds an exact
// rational, a binary floating-point value, or +infinity. Operations between
// rationals stay exact; any operand that is merely a double demotes the
// result to double. +infinity follows the Lebesgue-exponent conventions
// (1/inf = 0, conjugate(1) = inf); operations that would require -infinity
// or an indeterminate form throw.

#ifndef KINLAB_EXACT_HPP
#define KINLAB_EXACT_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <string>
#include <string_view>

#include "kinlab/errors.hpp"

namespace kinlab {

using rational = boost::multiprecision::cpp_rational;

class ExtReal {
 public:
  enum class Kind { exact, approx, infinite };

  ExtReal() : kind_(Kind::exact), rat_(0) {}
  ExtReal(int v) : kind_(Kind::exact), rat_(v) {}                  // NOLINT
  ExtReal(long long v) : kind_(Kind::exact), rat_(v) {}            // NOLINT
  ExtReal(const rational& v) : kind_(Kind::exact), rat_(v) {}      // NOLINT

  static ExtReal infinity() {
    ExtReal r;
    r.kind_ = Kind::infinite;
    return r;
  }
  static ExtReal ratio(long long num, long long den) {
    if (den == 0) throw argument_error("ExtReal::ratio: zero denominator");
    return ExtReal(rational(num, den));
  }
  // Doubles (e.g. measured quantities) enter as approximations; they never
  // silently promote to exact rationals.
  static ExtReal approx(double v) {
    if (std::isnan(v)) throw argument_error("ExtReal::approx: NaN");
    if (std::isinf(v)) {
      if (v < 0) throw argument_error("ExtReal::approx: -inf unsupported");
      return infinity();
    }
    ExtReal r;
    r.kind_ = Kind::approx;
    r.dbl_ = v;
    return r;
  }

  // Accepts "inf", "p/q", integers, and plain decimals ("0.3" -> 3/10),
  // with optional leading sign; all finite forms parse exactly.
  static ExtReal parse(std::string_view text);

  bool is_infinite() const noexcept { return kind_ == Kind::infinite; }
  bool is_exact() const noexcept { return kind_ == Kind::exact; }
  bool is_approx() const noexcept { return kind_ == Kind::approx; }

  // Numeric value; +inf for the infinite element.
  double value() const {
    switch (kind_) {
      case Kind::exact:
        return rat_.convert_to<double>();
      case Kind::approx:
        return dbl_;
      default:
        return std::numeric_limits<double>::infinity();
    }
  }

  const rational& exact() const {
    if (kind_ != Kind::exact)
      throw argument_error("ExtReal::exact: value is not an exact rational");
    return rat_;
  }

  std::string str() const;

  friend ExtReal operator-(const ExtReal& a) {
    switch (a.kind_) {
      case ExtReal::Kind::exact:
        return ExtReal(rational(-a.rat_));
      case ExtReal::Kind::approx:
        return ExtReal::approx(-a.dbl_);
      default:
        throw argument_error("ExtReal: -inf unsupported");
    }
  }

  friend ExtReal operator+(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator-(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator*(const ExtReal& a, const ExtReal& b);
  friend ExtReal operator/(const ExtReal& a, const ExtReal& b);

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.kind_ == Kind::infinite || b.kind_ == Kind::infinite)
      return a.kind_ == b.kind_;
    if (a.kind_ == Kind::exact && b.kind_ == Kind::exact)
      return a.rat_ == b.rat_;
    return a.value() == b.value();
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.kind_ == Kind::infinite) return false;
    if (b.kind_ == Kind::infinite) return true;
    if (a.kind_ == Kind::exact && b.kind_ == Kind::exact) return a.rat_ < b.rat_;
    return a.value() < b.value();
  }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return !(b < a); }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return !(a < b); }

 private:
  Kind kind_;
  rational rat_{};
  double dbl_ = 0.0;
};

namespace detail {

inline double ext_to_double(const ExtReal& a) { return a.value(); }

}  // namespace detail

inline ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtReal::infinity();
  if (a.is_exact() && b.is_exact()) return ExtReal(rational(a.rat_ + b.rat_));
  return ExtReal::approx(a.value() + b.value());
}

inline ExtReal operator-(const ExtReal& a, const ExtReal& b) {
  if (b.is_infinite())
    throw argument_error("ExtReal: subtraction of infinity unsupported");
  if (a.is_infinite()) return ExtReal::infinity();
  if (a.is_exact() && b.is_exact()) return ExtReal(rational(a.rat_ - b.rat_));
  return ExtReal::approx(a.value() - b.value());
}

inline ExtReal operator*(const ExtReal& a, const ExtReal& b) {
  if (a.is_infinite() || b.is_infinite()) {
    const ExtReal& fin = a.is_infinite() ? b : a;
    if (fin.is_infinite()) return ExtReal::infinity();
    if (fin.value() > 0) return ExtReal::infinity();
    throw argument_error("ExtReal: inf * nonpositive is undefined here");
  }
  if (a.is_exact() && b.is_exact()) return ExtReal(rational(a.rat_ * b.rat_));
  return ExtReal::approx(a.value() * b.value());
}

inline ExtReal operator/(const ExtReal& a, const ExtReal& b) {
  if (a.is_infinite() && b.is_infinite())
    throw argument_error("ExtReal: inf/inf is undefined");
  if (b.is_infinite()) return ExtReal(0);  // finite / inf
  if (a.is_infinite()) {
    if (b.value() > 0) return ExtReal::infinity();
    throw argument_error("ExtReal: inf / nonpositive is undefined here");
  }
  const bool bzero = b.is_exact() ? (b.exact() == 0) : (b.value() == 0.0);
  if (bzero) {
    const bool azero = a.is_exact() ? (a.exact() == 0) : (a.value() == 0.0);
    if (azero) throw argument_error("ExtReal: 0/0 is undefined");
    if (a.value() > 0) return ExtReal::infinity();  // positive / 0 -> +inf
    throw argument_error("ExtReal: negative / 0 unsupported (-inf)");
  }
  if (a.is_exact() && b.is_exact()) return ExtReal(rational(a.exact() / b.exact()));
  return ExtReal::approx(a.value() / b.value());
}

inline ExtReal min(const ExtReal& a, const ExtReal& b) { return a < b ? a : b; }
inline ExtReal max(const ExtReal& a, const ExtReal& b) { return a < b ? b : a; }

inline std::string ExtReal::str() const {
  switch (kind_) {
    case Kind::infinite:
      return "inf";
    case Kind::approx: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", dbl_);
      return buf;
    }
    default: {
      const auto num = boost::multiprecision::numerator(rat_);
      const auto den = boost::multiprecision::denominator(rat_);
      if (den == 1) return num.str();
      return num.str() + "/" + den.str();
    }
  }
}

inline ExtReal ExtReal::parse(std::string_view text) {
  auto fail = [&] {
    throw argument_error("ExtReal::parse: cannot parse \"" + std::string(text) +
                         "\"");
  };
  std::string s(text);
  // Trim surrounding whitespace.
  const auto first = s.find_first_not_of(" \t");
  const auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) fail();
  s = s.substr(first, last - first + 1);

  bool negative = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s == "inf" || s == "infinity") {
    if (negative) throw argument_error("ExtReal::parse: -inf unsupported");
    return infinity();
  }
  if (s.empty()) fail();

  const auto digits_only = [](std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };

  rational r;
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) fail();
    rational d{boost::multiprecision::cpp_int(den)};
    if (d == 0) fail();
    r = rational(boost::multiprecision::cpp_int(num)) / d;
  } else if (const auto dot = s.find('.'); dot != std::string::npos) {
    const std::string whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((!whole.empty() && !digits_only(whole)) || !digits_only(frac)) fail();
    rational base{whole.empty() ? boost::multiprecision::cpp_int(0)
                                : boost::multiprecision::cpp_int(whole)};
    boost::multiprecision::cpp_int scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    r = base + rational(boost::multiprecision::cpp_int(frac)) / rational(scale);
  } else {
    if (!digits_only(s)) fail();
    r = rational(boost::multiprecision::cpp_int(s));
  }
  if (negative) r = -r;
  return ExtReal(r);
}

// Conjugate Lebesgue exponent: 1/p + 1/p* = 1, with conjugate(1) = inf and
// conjugate(inf) = 1; involutive on [1, inf].
inline ExtReal conjugate_exponent(const ExtReal& p) {
  if (p.is_infinite()) return ExtReal(1);
  if (p < ExtReal(1)) throw argument_error("conjugate_exponent: p < 1");
  if (p == ExtReal(1)) return ExtReal::infinity();
  return p / (p - ExtReal(1));
}

}  // namespace kinlab

#endif  // KINLAB_EXACT_HPP
