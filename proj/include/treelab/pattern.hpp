#pragma once

#include "treelab/dyadic.hpp"
#include "treelab/lazy_point.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace treelab {

// [numerator / 2^level, (numerator + 1) / 2^level)
struct DyadicInterval {
  BigInt numerator{0};
  unsigned level = 0;

  static DyadicInterval from_bits(std::string_view bits);
  std::string bits() const;
  Dyadic measure() const { return Dyadic::pow2(-static_cast<int>(level)); }
  Dyadic left() const { return Dyadic(numerator, level); }
  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
};

enum class Relation { Disjoint, Contains, Partial };

// Either a single cylinder (bit string) or a run-length family with members
// head + bit^(i + offset) + tail for i >= first. Families keep tail[0] != bit
// and head not ending in bit.
class Pattern {
 public:
  static Pattern cylinder(std::string bits);
  static Pattern family(std::string head, bool bit, int offset, std::string tail, int first = 1);

  bool is_family() const { return family_; }
  const std::string& head() const { return head_; }  // the bits of a cylinder
  const std::string& tail() const { return tail_; }
  bool run_bit() const { return bit_; }
  int offset() const { return offset_; }
  int first() const { return first_; }
  int min_run() const { return first_ + offset_; }

  std::size_t member_length(int i) const;
  std::string member(int i) const;
  Pattern starting_at(int i) const;
  Dyadic measure() const;

  // How this pattern relates to the cylinder `region`.
  Relation classify(std::string_view region) const;
  // Member index whose cylinder contains the region (0 for a cylinder).
  std::optional<int> containing_member(std::string_view region) const;
  std::optional<int> match(const LazyPoint& x) const;
  void write_member(LazyPoint& x, int i) const;

  std::string describe() const;
  friend bool operator==(const Pattern&, const Pattern&) = default;

 private:
  bool family_ = false;
  std::string head_, tail_;
  bool bit_ = false;
  int offset_ = 0;
  int first_ = 0;
};

// Disjoint union of patterns.
class DyadicSet {
 public:
  DyadicSet() = default;
  DyadicSet(std::string name, std::vector<Pattern> parts) : name_(std::move(name)), parts_(std::move(parts)) {}
  static DyadicSet full(std::string name = "X") { return DyadicSet(std::move(name), {Pattern::cylinder("")}); }
  static DyadicSet empty(std::string name = "empty") { return DyadicSet(std::move(name), {}); }
  static DyadicSet of_interval(const DyadicInterval& I, std::string name = "I");

  const std::string& name() const { return name_; }
  const std::vector<Pattern>& parts() const { return parts_; }
  bool is_empty() const { return parts_.empty(); }
  bool finite() const;
  Dyadic measure() const;
  // Contains: region inside the set; Disjoint: outside; Partial otherwise.
  Relation classify(std::string_view region) const;
  bool contains(const LazyPoint& x) const;
  // Sorted, merged cylinders; families are kept as they are.
  DyadicSet canonical() const;
  friend bool operator==(const DyadicSet& a, const DyadicSet& b) { return a.parts_ == b.parts_; }

 private:
  std::string name_;
  std::vector<Pattern> parts_;
};

bool member(const LazyPoint& x, const DyadicSet& s);

}  // namespace treelab
