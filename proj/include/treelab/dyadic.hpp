#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <string>

namespace treelab {

using BigInt = boost::multiprecision::cpp_int;

// Exact rational num / 2^exp, kept with num odd (or zero).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(long long v) : num_(v) {}  // NOLINT: implicit from integers is convenient
  Dyadic(BigInt num, unsigned exp);

  static Dyadic pow2(int e);

  const BigInt& numerator() const { return num_; }
  unsigned exponent() const { return exp_; }
  BigInt denominator() const;

  Dyadic operator-() const;
  Dyadic& operator+=(const Dyadic& o);
  Dyadic& operator-=(const Dyadic& o);
  Dyadic& operator*=(const Dyadic& o);
  Dyadic half(unsigned k = 1) const;

  friend Dyadic operator+(Dyadic a, const Dyadic& b) { return a += b; }
  friend Dyadic operator-(Dyadic a, const Dyadic& b) { return a -= b; }
  friend Dyadic operator*(Dyadic a, const Dyadic& b) { return a *= b; }

  friend bool operator==(const Dyadic& a, const Dyadic& b) {
    return a.exp_ == b.exp_ && a.num_ == b.num_;
  }
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

  // "num/den"; integers print as "n/1".
  std::string str() const;
  static Dyadic parse(const std::string& s);
  double to_double() const;

 private:
  void normalize();

  BigInt num_{0};
  unsigned exp_{0};
};

struct MeasureBounds {
  Dyadic lower;
  Dyadic upper;

  Dyadic gap() const { return upper - lower; }
  bool contains(const Dyadic& v) const { return lower <= v && v <= upper; }
  bool overlaps(const MeasureBounds& o) const {
    return lower <= o.upper && o.lower <= upper;
  }
  bool exact() const { return lower == upper; }

  MeasureBounds& operator+=(const MeasureBounds& o) {
    lower += o.lower;
    upper += o.upper;
    return *this;
  }
  friend MeasureBounds operator+(MeasureBounds a, const MeasureBounds& b) { return a += b; }
  friend MeasureBounds operator*(const MeasureBounds& a, const MeasureBounds& b) {
    return {a.lower * b.lower, a.upper * b.upper};
  }
  friend bool operator==(const MeasureBounds&, const MeasureBounds&) = default;
};

}  // namespace treelab
