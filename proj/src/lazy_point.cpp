#include "treelab/lazy_point.hpp"

#include "treelab/error.hpp"

#include <bit>
#include <cmath>

namespace treelab {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t tag) {
  return mix64(mix64(seed + 0x9E3779B97F4A7C15ULL) ^ (tag * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
}

LazyPoint sample_point(std::uint64_t seed) { return LazyPoint(mix64(seed ^ 0x5DEECE66DULL)); }

void LazyPoint::realize(std::size_t words) const {
  if (words * 64 > kMaxBits) throw PrecisionError("point needs more than 2048 bits");
  while (words_.size() < words) words_.push_back(mix64(key_ + (words_.size() + 1) * 0x9E3779B97F4A7C15ULL));
}

bool LazyPoint::bit(std::size_t k) const { return (word(k >> 6) >> (63 - (k & 63))) & 1u; }

std::size_t LazyPoint::run(std::size_t from, bool b) const {
  std::size_t k = from;
  for (;;) {
    if (k >= kMaxBits) throw PrecisionError("run exceeds 2048 bits");
    std::uint64_t w = word(k >> 6);
    if (b) w = ~w;
    unsigned off = k & 63;
    w <<= off;
    // w now holds bits k.. at the top; a set bit ends the run
    if (w != 0) {
      unsigned lead = static_cast<unsigned>(std::countl_zero(w));
      if (lead < 64 - off) return k + lead - from;
    }
    k += 64 - off;
  }
}

bool LazyPoint::matches(std::string_view bits, std::size_t from) const {
  if (bits.size() <= 64 - (from & 63)) {
    // common case: the whole string sits in one word
    unsigned n = static_cast<unsigned>(bits.size());
    if (n == 0) return true;
    std::uint64_t want = 0;
    for (char c : bits) want = (want << 1) | (c == '1');
    return ((word(from >> 6) << (from & 63)) >> (64 - n)) == want;
  }
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bit(from + i) != (bits[i] == '1')) return false;
  return true;
}

void LazyPoint::write(std::size_t from, std::string_view bits) {
  if (bits.empty()) return;
  realize(((from + bits.size() + 63) >> 6));
  for (std::size_t i = 0; i < bits.size(); ++i) {
    std::size_t k = from + i;
    std::uint64_t m = 1ULL << (63 - (k & 63));
    if (bits[i] == '1')
      words_[k >> 6] |= m;
    else
      words_[k >> 6] &= ~m;
  }
}

void LazyPoint::fill(std::size_t from, std::size_t count, bool b) {
  if (count == 0) return;
  realize(((from + count + 63) >> 6));
  std::size_t k = from, end = from + count;
  while (k < end) {
    unsigned off = k & 63;
    std::size_t n = std::min<std::size_t>(64 - off, end - k);
    std::uint64_t m = (n == 64 ? ~0ULL : ((1ULL << n) - 1) << (64 - off - n));
    if (b)
      words_[k >> 6] |= m;
    else
      words_[k >> 6] &= ~m;
    k += n;
  }
}

std::string LazyPoint::prefix(std::size_t n) const {
  std::string s;
  for (std::size_t k = 0; k < n; ++k) s += bit(k) ? '1' : '0';
  return s;
}

double LazyPoint::approx() const { return std::ldexp(static_cast<double>(word(0) >> 11), -53); }

bool operator==(const LazyPoint& a, const LazyPoint& b) {
  if (a.key_ != b.key_) return false;
  std::size_t n = std::max(a.words_.size(), b.words_.size());
  if (n == 0) return true;
  a.realize(n);
  b.realize(n);
  for (std::size_t i = 0; i < n; ++i)
    if (a.words_[i] != b.words_[i]) return false;
  return true;
}

std::size_t LazyPoint::hash() const { return static_cast<std::size_t>(mix64(key_ ^ word(0))); }

}  // namespace treelab
