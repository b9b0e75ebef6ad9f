#pragma once

#include "treelab/dynamics.hpp"

#include <map>
#include <span>

namespace treelab {

inline constexpr int kDefaultTruncation = 40;

// alpha(word) y in set (or not in set when negate).
struct Constraint {
  Word word;
  std::shared_ptr<const DyadicSet> set;
  bool negate = false;
};

bool satisfies(const DyadicSystem& sys, const Constraint& c, const LazyPoint& y);
bool satisfies_all(const DyadicSystem& sys, std::span<const Constraint> cs, const LazyPoint& y);

// Joint law of the memberships [alpha(w_k) y in S_k] (negate ignored).
// Mass that could not be resolved at the working resolution is `unknown`.
struct EventDistribution {
  std::map<std::vector<std::uint8_t>, Dyadic> cells;
  Dyadic unknown;

  MeasureBounds bounds(const std::vector<std::uint8_t>& outcome) const;
};

EventDistribution event_distribution(const DyadicSystem& sys, std::span<const Constraint> cs,
                                     int truncation = kDefaultTruncation);
MeasureBounds event_probability(const DyadicSystem& sys, std::span<const Constraint> cs,
                                int truncation = kDefaultTruncation);

}  // namespace treelab
