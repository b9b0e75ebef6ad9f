#include "treelab/events.hpp"

#include "treelab/error.hpp"

#include <optional>

namespace treelab {

bool satisfies(const DyadicSystem& sys, const Constraint& c, const LazyPoint& y) {
  return c.set->contains(apply_word(sys, c.word, y)) != c.negate;
}

bool satisfies_all(const DyadicSystem& sys, std::span<const Constraint> cs, const LazyPoint& y) {
  for (const Constraint& c : cs)
    if (!satisfies(sys, c, y)) return false;
  return true;
}

MeasureBounds EventDistribution::bounds(const std::vector<std::uint8_t>& outcome) const {
  auto it = cells.find(outcome);
  Dyadic m = it == cells.end() ? Dyadic() : it->second;
  return {m, m + unknown};
}

namespace {

constexpr std::size_t kMaxRegionBits = 4096;

struct Group {
  Word word;
  std::vector<std::size_t> members;
};

class Engine {
 public:
  Engine(const DyadicSystem& sys, std::span<const Constraint> cs, int truncation) : sys_(sys), cs_(cs) {
    std::size_t letters = 0;
    for (std::size_t k = 0; k < cs.size(); ++k) {
      std::size_t g = 0;
      while (g < groups_.size() && !(groups_[g].word == cs[k].word)) ++g;
      if (g == groups_.size()) {
        groups_.push_back({cs[k].word, {}});
        letters += cs[k].word.size() + 1;
      }
      groups_[g].members.push_back(k);
    }
    unsigned extra = 1;
    while ((1u << extra) < 2 * letters) ++extra;
    working_ = static_cast<std::size_t>(truncation) + extra;
  }

  EventDistribution run() {
    std::vector<std::uint8_t> outcome(cs_.size(), 2);
    if (groups_.empty()) {
      dist_.cells[outcome] = Dyadic(1);
    } else {
      visit("", 0, outcome);
    }
    return std::move(dist_);
  }

 private:
  std::optional<std::string> image(const std::string& region, const Word& w) const {
    std::string cur = region;
    for (std::size_t k = w.size(); k-- > 0;) {
      if (w[k].gen >= sys_.rank()) throw UsageError("constraint word outside the system's generators");
      CylinderImage im = sys_.letter_map(w[k]).image(cur);
      if (im.kind == ImageKind::Split) return std::nullopt;
      cur = std::move(im.bits);
    }
    return cur;
  }

  void record(const std::vector<std::uint8_t>& outcome, const Dyadic& m) {
    auto [it, fresh] = dist_.cells.emplace(outcome, m);
    if (!fresh) it->second += m;
  }

  void visit(const std::string& region, std::size_t g, std::vector<std::uint8_t>& outcome) {
    const Group& grp = groups_[g];
    auto img = image(region, grp.word);
    if (!img) {
      split(region, g, outcome);
      return;
    }
    bool decided = true;
    for (std::size_t k : grp.members) {
      Relation r = cs_[k].set->classify(*img);
      if (r == Relation::Partial) {
        decided = false;
        outcome[k] = 2;
      } else {
        outcome[k] = r == Relation::Contains;
      }
    }
    if (decided) {
      if (g + 1 == groups_.size())
        record(outcome, Dyadic::pow2(-static_cast<int>(region.size())));
      else
        visit(region, g + 1, outcome);
    } else if (g + 1 == groups_.size()) {
      exact(*img, grp, Dyadic(1), outcome);
    } else {
      split(region, g, outcome);
    }
    for (std::size_t k : grp.members) outcome[k] = 2;
  }

  void split(const std::string& region, std::size_t g, std::vector<std::uint8_t>& outcome) {
    if (region.size() >= working_) {
      dist_.unknown += Dyadic::pow2(-static_cast<int>(region.size()));
      return;
    }
    visit(region + '0', g, outcome);
    visit(region + '1', g, outcome);
  }

  // Exact law of the last group's memberships inside the cylinder J.
  void exact(const std::string& J, const Group& grp, const Dyadic& factor, std::vector<std::uint8_t>& outcome) {
    if (J.size() > kMaxRegionBits) throw PrecisionError("event resolution exceeds 4096 bits");
    bool decided = true;
    bool stable = true;
    std::optional<std::pair<std::string, bool>> shape;
    for (std::size_t k : grp.members) {
      const DyadicSet& s = *cs_[k].set;
      Relation r = s.classify(J);
      outcome[k] = r == Relation::Contains;
      if (r != Relation::Partial) continue;
      decided = false;
      outcome[k] = 2;
      for (const Pattern& p : s.parts()) {
        if (p.classify(J) != Relation::Partial) continue;
        if (!p.is_family() || J.size() < p.head().size() || J.compare(0, p.head().size(), p.head()) != 0) {
          stable = false;
          break;
        }
        const char b = p.run_bit() ? '1' : '0';
        std::size_t n = 0;
        for (std::size_t q = p.head().size(); q < J.size(); ++q) {
          if (J[q] != b) {
            stable = false;
            break;
          }
          ++n;
        }
        if (!stable || static_cast<int>(n) < p.min_run()) {
          stable = false;
          break;
        }
        std::pair<std::string, bool> sh{p.head(), p.run_bit()};
        if (shape && *shape != sh) {
          stable = false;
          break;
        }
        shape = sh;
      }
      if (!stable) break;
    }
    if (decided) {
      record(outcome, factor * Dyadic::pow2(-static_cast<int>(J.size())));
    } else if (stable) {
      // J = h b^n: shifting the run by one halves measure and preserves
      // membership, so law(J) = 2 law(J + !b).
      exact(J + (shape->second ? '0' : '1'), grp, factor * Dyadic(2), outcome);
    } else {
      exact(J + '0', grp, factor, outcome);
      exact(J + '1', grp, factor, outcome);
    }
    for (std::size_t k : grp.members) outcome[k] = 2;
  }

  const DyadicSystem& sys_;
  std::span<const Constraint> cs_;
  std::vector<Group> groups_;
  std::size_t working_ = 0;
  EventDistribution dist_;
};

}  // namespace

EventDistribution event_distribution(const DyadicSystem& sys, std::span<const Constraint> cs, int truncation) {
  if (truncation < 1) throw UsageError("truncation level must be >= 1");
  return Engine(sys, cs, truncation).run();
}

MeasureBounds event_probability(const DyadicSystem& sys, std::span<const Constraint> cs, int truncation) {
  EventDistribution d = event_distribution(sys, cs, truncation);
  Dyadic lower;
  for (const auto& [outcome, m] : d.cells) {
    bool ok = true;
    for (std::size_t k = 0; k < cs.size() && ok; ++k) ok = (outcome[k] == 1) != cs[k].negate;
    if (ok) lower += m;
  }
  return {lower, lower + d.unknown};
}

}  // namespace treelab
