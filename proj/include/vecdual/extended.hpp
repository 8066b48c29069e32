#pragma once

#include "vecdual/common.hpp"

namespace vecdual {

// A point of Y extended with the two improper elements +inf and -inf.
// Addition treats the infinities as absorbing, and a sum of oppositely
// signed infinite points is undefined (throws).
class ExtendedPoint {
 public:
  enum class Tag : std::uint8_t { Finite, PlusInf, MinusInf };

  static ExtendedPoint finite(Vec v) {
    ExtendedPoint p;
    p.tag_ = Tag::Finite;
    p.v_ = std::move(v);
    return p;
  }
  static ExtendedPoint plus_inf() {
    ExtendedPoint p;
    p.tag_ = Tag::PlusInf;
    return p;
  }
  static ExtendedPoint minus_inf() {
    ExtendedPoint p;
    p.tag_ = Tag::MinusInf;
    return p;
  }

  Tag tag() const { return tag_; }
  bool is_finite() const { return tag_ == Tag::Finite; }
  bool is_plus_inf() const { return tag_ == Tag::PlusInf; }
  bool is_minus_inf() const { return tag_ == Tag::MinusInf; }
  const Vec& value() const {
    require(is_finite(), "ExtendedPoint: value() on infinite point");
    return v_;
  }

  ExtendedPoint operator-() const {
    switch (tag_) {
      case Tag::PlusInf:
        return minus_inf();
      case Tag::MinusInf:
        return plus_inf();
      default:
        return finite(neg(v_));
    }
  }

  friend ExtendedPoint operator+(const ExtendedPoint& a, const ExtendedPoint& b) {
    if (a.is_finite() && b.is_finite()) return finite(add(a.v_, b.v_));
    if (a.is_plus_inf() || b.is_plus_inf()) {
      if (a.is_minus_inf() || b.is_minus_inf())
        throw std::domain_error(
            "ExtendedPoint: (+inf) + (-inf) is undefined");
      return plus_inf();
    }
    return minus_inf();
  }

  friend ExtendedPoint operator-(const ExtendedPoint& a, const ExtendedPoint& b) {
    return a + (-b);
  }

 private:
  Tag tag_ = Tag::PlusInf;
  Vec v_;
};

}  // namespace vecdual
