#pragma once

#include <boost/container/small_vector.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace treelab {

std::uint64_t mix64(std::uint64_t x);
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag);

// A point of [0,1) given by its binary expansion: bit k (k = 0 is the 1/2
// digit) comes from a counter-based stream keyed by the seed until a prefix
// is overwritten by a translation.
class LazyPoint {
 public:
  static constexpr std::size_t kMaxBits = 2048;

  LazyPoint() : LazyPoint(0) {}
  explicit LazyPoint(std::uint64_t key) : key_(key) {}

  std::uint64_t key() const { return key_; }
  bool bit(std::size_t k) const;
  // Length of the run of bits equal to b starting at `from`.
  std::size_t run(std::size_t from, bool b) const;
  bool matches(std::string_view bits, std::size_t from = 0) const;
  void write(std::size_t from, std::string_view bits);
  void fill(std::size_t from, std::size_t count, bool b);
  std::string prefix(std::size_t n) const;
  // leading bits as a double, for reporting only
  double approx() const;

  friend bool operator==(const LazyPoint& a, const LazyPoint& b);
  std::size_t hash() const;

 private:
  std::uint64_t word(std::size_t i) const {
    if (i >= words_.size()) realize(i + 1);
    return words_[i];
  }
  void realize(std::size_t words) const;

  std::uint64_t key_;
  mutable boost::container::small_vector<std::uint64_t, 2> words_;
};

struct LazyPointHash {
  std::size_t operator()(const LazyPoint& x) const { return x.hash(); }
};

// Uniform point; distinct seeds give independent streams.
LazyPoint sample_point(std::uint64_t seed);

}  // namespace treelab
