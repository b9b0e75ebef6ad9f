#include "treelab/pattern.hpp"

#include "treelab/error.hpp"

#include <algorithm>

namespace treelab {

DyadicInterval DyadicInterval::from_bits(std::string_view bits) {
  DyadicInterval I;
  for (char c : bits) I.numerator = I.numerator * 2 + (c == '1' ? 1 : 0);
  I.level = static_cast<unsigned>(bits.size());
  return I;
}

std::string DyadicInterval::bits() const {
  std::string s(level, '0');
  BigInt n = numerator;
  for (unsigned k = 0; k < level; ++k) {
    if (boost::multiprecision::bit_test(n, k)) s[level - 1 - k] = '1';
  }
  return s;
}

Pattern Pattern::cylinder(std::string bits) {
  Pattern p;
  p.head_ = std::move(bits);
  return p;
}

Pattern Pattern::family(std::string head, bool bit, int offset, std::string tail, int first) {
  char b = bit ? '1' : '0';
  if (tail.empty() || tail[0] == b) throw UsageError("family tail must start with the complementary bit");
  if (!head.empty() && head.back() == b) throw UsageError("family head must not end with the run bit");
  if (first + offset < 0) throw UsageError("family run length would be negative");
  Pattern p;
  p.family_ = true;
  p.head_ = std::move(head);
  p.tail_ = std::move(tail);
  p.bit_ = bit;
  p.offset_ = offset;
  p.first_ = first;
  return p;
}

std::size_t Pattern::member_length(int i) const {
  if (!family_) return head_.size();
  return head_.size() + static_cast<std::size_t>(i + offset_) + tail_.size();
}

std::string Pattern::member(int i) const {
  if (!family_) return head_;
  return head_ + std::string(static_cast<std::size_t>(i + offset_), bit_ ? '1' : '0') + tail_;
}

Pattern Pattern::starting_at(int i) const {
  Pattern p = *this;
  if (family_) p.first_ = std::max(first_, i);
  return p;
}

Dyadic Pattern::measure() const {
  if (!family_) return Dyadic::pow2(-static_cast<int>(head_.size()));
  int e = static_cast<int>(head_.size() + tail_.size()) + offset_ + first_ - 1;
  return Dyadic::pow2(-e);
}

namespace {

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace

Relation Pattern::classify(std::string_view region) const {
  if (!family_) {
    if (starts_with(region, head_)) return Relation::Contains;
    if (starts_with(head_, region)) return Relation::Partial;
    return Relation::Disjoint;
  }
  if (region.size() <= head_.size()) return starts_with(head_, region) ? Relation::Partial : Relation::Disjoint;
  if (!starts_with(region, head_)) return Relation::Disjoint;
  std::string_view rest = region.substr(head_.size());
  const char b = bit_ ? '1' : '0';
  std::size_t n = 0;
  while (n < rest.size() && rest[n] == b) ++n;
  if (n == rest.size()) {
    // every member with run >= n lies in the region
    return Relation::Partial;
  }
  int i = static_cast<int>(n) - offset_;
  if (i < first_) return Relation::Disjoint;
  std::string_view after = rest.substr(n);
  if (starts_with(after, tail_)) return Relation::Contains;
  if (starts_with(tail_, after)) return Relation::Partial;
  return Relation::Disjoint;
}

std::optional<int> Pattern::containing_member(std::string_view region) const {
  if (!family_) return starts_with(region, head_) ? std::optional<int>(0) : std::nullopt;
  if (region.size() <= head_.size() || !starts_with(region, head_)) return std::nullopt;
  std::string_view rest = region.substr(head_.size());
  const char b = bit_ ? '1' : '0';
  std::size_t n = 0;
  while (n < rest.size() && rest[n] == b) ++n;
  if (n == rest.size()) return std::nullopt;
  int i = static_cast<int>(n) - offset_;
  if (i < first_ || !starts_with(rest.substr(n), tail_)) return std::nullopt;
  return i;
}

std::optional<int> Pattern::match(const LazyPoint& x) const {
  if (!x.matches(head_)) return std::nullopt;
  if (!family_) return 0;
  std::size_t n = x.run(head_.size(), bit_);
  int i = static_cast<int>(n) - offset_;
  if (i < first_) return std::nullopt;
  if (!x.matches(tail_, head_.size() + n)) return std::nullopt;
  return i;
}

void Pattern::write_member(LazyPoint& x, int i) const {
  x.write(0, head_);
  if (!family_) return;
  auto n = static_cast<std::size_t>(i + offset_);
  x.fill(head_.size(), n, bit_);
  x.write(head_.size() + n, tail_);
}

std::string Pattern::describe() const {
  if (!family_) return head_.empty() ? "[]" : head_;
  return head_ + "(" + (bit_ ? "1" : "0") + "^{i" + (offset_ >= 0 ? "+" : "") + std::to_string(offset_) +
         "})" + tail_ + ",i>=" + std::to_string(first_);
}

DyadicSet DyadicSet::of_interval(const DyadicInterval& I, std::string name) {
  return DyadicSet(std::move(name), {Pattern::cylinder(I.bits())});
}

bool DyadicSet::finite() const {
  return std::none_of(parts_.begin(), parts_.end(), [](const Pattern& p) { return p.is_family(); });
}

Dyadic DyadicSet::measure() const {
  Dyadic m;
  for (const Pattern& p : parts_) m += p.measure();
  return m;
}

Relation DyadicSet::classify(std::string_view region) const {
  bool partial = false;
  for (const Pattern& p : parts_) {
    Relation r = p.classify(region);
    if (r == Relation::Contains) return Relation::Contains;
    partial = partial || r == Relation::Partial;
  }
  return partial ? Relation::Partial : Relation::Disjoint;
}

bool DyadicSet::contains(const LazyPoint& x) const {
  for (const Pattern& p : parts_)
    if (p.match(x)) return true;
  return false;
}

bool member(const LazyPoint& x, const DyadicSet& s) { return s.contains(x); }

DyadicSet DyadicSet::canonical() const {
  std::vector<std::string> cyl;
  std::vector<Pattern> fam;
  for (const Pattern& p : parts_) (p.is_family() ? fam.push_back(p) : cyl.push_back(p.head()));
  // drop cylinders inside others, then merge sibling pairs until stable
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(cyl.begin(), cyl.end());
    std::vector<std::string> kept;
    for (const std::string& c : cyl) {
      if (!kept.empty() && starts_with(c, kept.back())) {
        changed = changed || c != kept.back();
        continue;
      }
      kept.push_back(c);
    }
    std::vector<std::string> merged;
    for (std::size_t i = 0; i < kept.size(); ++i) {
      const std::string& c = kept[i];
      if (i + 1 < kept.size() && !c.empty() && c.back() == '0' && kept[i + 1].size() == c.size() &&
          kept[i + 1].compare(0, c.size() - 1, c, 0, c.size() - 1) == 0 && kept[i + 1].back() == '1') {
        merged.push_back(c.substr(0, c.size() - 1));
        ++i;
        changed = true;
      } else {
        merged.push_back(c);
      }
    }
    cyl = std::move(merged);
  }
  std::vector<Pattern> out;
  for (auto& c : cyl) out.push_back(Pattern::cylinder(c));
  out.insert(out.end(), fam.begin(), fam.end());
  return DyadicSet(name_, std::move(out));
}

}  // namespace treelab
