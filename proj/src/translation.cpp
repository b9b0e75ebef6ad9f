#include "treelab/translation.hpp"

#include "treelab/error.hpp"

#include <algorithm>

namespace treelab {

namespace {

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

// Member indices of `pat` meeting the cylinder c: either a single member or
// all members from some index on.
struct MemberRange {
  bool any = false;
  int from = 0;
  bool unbounded = false;
};

MemberRange members_meeting(const Pattern& pat, std::string_view c) {
  MemberRange r;
  if (!pat.is_family()) {
    if (starts_with(c, pat.head()) || starts_with(pat.head(), c)) r.any = true;
    return r;
  }
  const std::string& h = pat.head();
  if (c.size() <= h.size()) {
    if (starts_with(h, c)) r = {true, pat.first(), true};
    return r;
  }
  if (!starts_with(c, h)) return r;
  std::string_view rest = c.substr(h.size());
  const char b = pat.run_bit() ? '1' : '0';
  std::size_t n = 0;
  while (n < rest.size() && rest[n] == b) ++n;
  if (n == rest.size()) {
    r = {true, std::max(pat.first(), static_cast<int>(n) - pat.offset()), true};
    return r;
  }
  int i = static_cast<int>(n) - pat.offset();
  if (i < pat.first()) return r;
  std::string_view after = rest.substr(n);
  if (starts_with(after, pat.tail()) || starts_with(pat.tail(), after)) r = {true, i, false};
  return r;
}

}  // namespace

PiecewiseTranslation::PiecewiseTranslation(std::string name, std::vector<Piece> pieces)
    : name_(std::move(name)), pieces_(std::move(pieces)) {
  for (const Piece& pc : pieces_) {
    if (pc.source.is_family() != pc.target.is_family() ||
        pc.source.member_length(pc.source.first()) != pc.target.member_length(pc.source.first()) ||
        (pc.source.is_family() && (pc.source.first() != pc.target.first() ||
                                   pc.source.member_length(pc.source.first() + 1) !=
                                       pc.target.member_length(pc.source.first() + 1))))
      throw UsageError("piece of " + name_ + " does not preserve member lengths");
  }
  identity_ = pieces_.size() == 1 && !pieces_[0].source.is_family() && pieces_[0].source.head().empty() &&
              pieces_[0].target.head().empty();
}

PiecewiseTranslation PiecewiseTranslation::identity(std::string name) {
  return PiecewiseTranslation(std::move(name), {{Pattern::cylinder(""), Pattern::cylinder(""), false}});
}

PiecewiseTranslation PiecewiseTranslation::inverse() const {
  std::vector<Piece> inv;
  for (const Piece& pc : pieces_) inv.push_back({pc.target, pc.source, pc.completion});
  std::string n = name_;
  if (n.size() > 3 && n.compare(n.size() - 3, 3, "^-1") == 0)
    n.resize(n.size() - 3);
  else
    n += "^-1";
  return PiecewiseTranslation(n, std::move(inv));
}

CylinderImage PiecewiseTranslation::image(std::string_view region) const {
  if (identity_) return {ImageKind::Cylinder, std::string(region)};
  const Piece* partial = nullptr;
  int partials = 0;
  for (const Piece& pc : pieces_) {
    Relation rel = pc.source.classify(region);
    if (rel == Relation::Contains) {
      int i = *pc.source.containing_member(region);
      std::size_t len = pc.source.member_length(i);
      return {ImageKind::Cylinder, pc.target.member(i) + std::string(region.substr(len))};
    }
    if (rel == Relation::Partial) {
      partial = &pc;
      ++partials;
    }
  }
  // A region covering the tail of a single source family, e.g. 1^n for the
  // odometer, maps onto a cylinder when the target tail is one bit.
  if (partials == 1 && partial->source.is_family() && partial->target.tail().size() == 1) {
    const Pattern& s = partial->source;
    const std::string& h = s.head();
    const char b = s.run_bit() ? '1' : '0';
    if (region.size() >= h.size() && starts_with(region, h) &&
        std::all_of(region.begin() + h.size(), region.end(), [&](char c) { return c == b; })) {
      int n = static_cast<int>(region.size() - h.size());
      int i0 = std::max(s.first(), n - s.offset());
      const Pattern& t = partial->target;
      return {ImageKind::Cylinder,
              t.head() + std::string(static_cast<std::size_t>(i0 + t.offset()), t.run_bit() ? '1' : '0')};
    }
  }
  return {ImageKind::Split, {}};
}

void PiecewiseTranslation::apply(LazyPoint& x) const {
  if (identity_) return;
  for (const Piece& pc : pieces_) {
    if (auto i = pc.source.match(x)) {
      pc.target.write_member(x, *i);
      return;
    }
  }
  throw PrecisionError("point not located by any piece of " + name_);
}

DyadicSet PiecewiseTranslation::preimage(const DyadicSet& s) const {
  std::vector<Pattern> out;
  for (const Pattern& part : s.parts()) {
    if (part.is_family()) throw UsageError("preimage of a family set is not supported");
    const std::string& c = part.head();
    for (const Piece& pc : pieces_) {
      MemberRange r = members_meeting(pc.target, c);
      if (!r.any) continue;
      if (!pc.target.is_family()) {
        const std::string& t = pc.target.head();
        if (starts_with(c, t))
          out.push_back(Pattern::cylinder(pc.source.head() + c.substr(t.size())));
        else
          out.push_back(pc.source);
        continue;
      }
      if (r.unbounded) {
        out.push_back(pc.source.starting_at(r.from));
        continue;
      }
      std::string m = pc.target.member(r.from);
      if (starts_with(c, m))
        out.push_back(Pattern::cylinder(pc.source.member(r.from) + c.substr(m.size())));
      else
        out.push_back(Pattern::cylinder(pc.source.member(r.from)));
    }
  }
  return DyadicSet(s.name() + "@" + name_, std::move(out)).canonical();
}

Dyadic PiecewiseTranslation::offset(std::size_t k, int i) const {
  const Piece& pc = pieces_.at(k);
  return DyadicInterval::from_bits(pc.target.member(i)).left() - DyadicInterval::from_bits(pc.source.member(i)).left();
}

bool PiecewiseTranslation::verify_partition(unsigned level, bool targets, std::string* why) const {
  std::vector<std::string> cyl;
  Dyadic total;
  for (const Piece& pc : pieces_) {
    const Pattern& p = targets ? pc.target : pc.source;
    if (!p.is_family()) {
      cyl.push_back(p.head());
      total += p.measure();
      continue;
    }
    int i = p.first();
    while (p.member_length(i) <= level) {
      cyl.push_back(p.member(i));
      total += Dyadic::pow2(-static_cast<int>(p.member_length(i)));
      ++i;
    }
    total += p.starting_at(i).measure();
  }
  std::sort(cyl.begin(), cyl.end());
  for (std::size_t k = 1; k < cyl.size(); ++k) {
    if (starts_with(cyl[k], cyl[k - 1])) {
      if (why) *why = "overlap between " + cyl[k - 1] + " and " + cyl[k];
      return false;
    }
  }
  if (total != Dyadic(1)) {
    if (why) *why = "total measure " + total.str();
    return false;
  }
  return true;
}

}  // namespace treelab
