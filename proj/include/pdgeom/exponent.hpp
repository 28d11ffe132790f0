#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace pdgeom {

// Distance values use +infinity as the sentinel for unreachable pairs
// (points in different components of a disjoint union).
inline constexpr double kInfiniteDistance = std::numeric_limits<double>::infinity();

// Matching exponent p in [1, inf]. Integer powers are computed by repeated
// multiplication; only non-integer exponents go through std::pow.
class Exponent {
 public:
  static Exponent infinity() {
    Exponent e;
    e.inf_ = true;
    e.value_ = kInfiniteDistance;
    return e;
  }

  explicit Exponent(double value) : value_(value) {
    if (!(value >= 1.0) || std::isinf(value)) {
      throw std::invalid_argument("exponent must be a finite real >= 1 (use Exponent::infinity())");
    }
  }

  bool is_inf() const { return inf_; }

  // Finite exponents only.
  double value() const {
    if (inf_) throw std::logic_error("value() called on the infinite exponent");
    return value_;
  }

  bool is_integer() const {
    return !inf_ && value_ == std::floor(value_) && value_ <= 64.0;
  }

  // base^p for base >= 0.
  double power(double base) const {
    if (inf_) throw std::logic_error("power() called on the infinite exponent");
    if (is_integer()) {
      double acc = 1.0;
      for (int k = 0; k < static_cast<int>(value_); ++k) acc *= base;
      return acc;
    }
    return std::pow(base, value_);
  }

  // x^(1/p) for x >= 0.
  double root(double x) const {
    if (inf_) throw std::logic_error("root() called on the infinite exponent");
    if (value_ == 1.0) return x;
    if (value_ == 2.0) return std::sqrt(x);
    return std::pow(x, 1.0 / value_);
  }

  // Accepts "inf", a decimal ("2", "2.5"), or a rational ("3/2").
  static std::optional<Exponent> parse(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "INF") return infinity();
    const auto slash = text.find('/');
    try {
      std::size_t used = 0;
      if (slash == std::string::npos) {
        const double v = std::stod(text, &used);
        if (used != text.size()) return std::nullopt;
        return Exponent(v);
      }
      const std::string num = text.substr(0, slash);
      const std::string den = text.substr(slash + 1);
      const double a = std::stod(num, &used);
      if (used != num.size()) return std::nullopt;
      const double b = std::stod(den, &used);
      if (used != den.size() || b == 0.0) return std::nullopt;
      return Exponent(a / b);
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }

  std::string to_string() const {
    if (inf_) return "inf";
    std::string s = std::to_string(value_);
    // Trim trailing zeros for readability; keep at least one digit.
    while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
      const bool dot = s.back() == '.';
      s.pop_back();
      if (dot) break;
    }
    return s;
  }

  friend bool operator==(const Exponent& a, const Exponent& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend bool operator!=(const Exponent& a, const Exponent& b) { return !(a == b); }

 private:
  Exponent() = default;
  double value_ = 1.0;
  bool inf_ = false;
};

}  // namespace pdgeom
