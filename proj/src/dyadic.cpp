#include "treelab/dyadic.hpp"

#include "treelab/error.hpp"

#include <cmath>
#include <sstream>

namespace treelab {

Dyadic::Dyadic(BigInt num, unsigned exp) : num_(std::move(num)), exp_(exp) { normalize(); }

Dyadic Dyadic::pow2(int e) {
  if (e >= 0) return Dyadic(BigInt(1) << e, 0);
  return Dyadic(BigInt(1), static_cast<unsigned>(-e));
}

BigInt Dyadic::denominator() const { return BigInt(1) << exp_; }

void Dyadic::normalize() {
  if (num_ == 0) {
    exp_ = 0;
    return;
  }
  if (exp_ == 0) return;
  unsigned tz = boost::multiprecision::lsb(num_ < 0 ? BigInt(-num_) : num_);
  unsigned k = tz < exp_ ? tz : exp_;
  if (k) {
    num_ >>= k;
    exp_ -= k;
  }
}

Dyadic Dyadic::operator-() const {
  Dyadic r = *this;
  r.num_ = -r.num_;
  return r;
}

Dyadic& Dyadic::operator+=(const Dyadic& o) {
  if (exp_ >= o.exp_) {
    num_ += o.num_ << (exp_ - o.exp_);
  } else {
    num_ = (num_ << (o.exp_ - exp_)) + o.num_;
    exp_ = o.exp_;
  }
  normalize();
  return *this;
}

Dyadic& Dyadic::operator-=(const Dyadic& o) { return *this += -o; }

Dyadic& Dyadic::operator*=(const Dyadic& o) {
  num_ *= o.num_;
  exp_ += o.exp_;
  normalize();
  return *this;
}

Dyadic Dyadic::half(unsigned k) const {
  Dyadic r = *this;
  r.exp_ += k;
  r.normalize();
  return r;
}

std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b) {
  unsigned e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
  BigInt x = a.num_ << (e - a.exp_);
  BigInt y = b.num_ << (e - b.exp_);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Dyadic::str() const {
  std::ostringstream os;
  os << num_ << '/' << denominator();
  return os.str();
}

Dyadic Dyadic::parse(const std::string& s) {
  auto slash = s.find('/');
  try {
    BigInt num(s.substr(0, slash));
    if (slash == std::string::npos) return Dyadic(num, 0);
    BigInt den(s.substr(slash + 1));
    if (den <= 0 || (den & (den - 1)) != 0) throw UsageError("denominator is not a power of two: " + s);
    return Dyadic(num, boost::multiprecision::msb(den));
  } catch (const std::runtime_error&) {
    throw UsageError("malformed dyadic rational: " + s);
  }
}

double Dyadic::to_double() const {
  return std::ldexp(num_.convert_to<double>(), -static_cast<int>(exp_));
}

}  // namespace treelab
