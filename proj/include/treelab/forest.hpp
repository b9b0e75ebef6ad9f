#pragma once

#include "treelab/dual.hpp"
#include "treelab/dynamics.hpp"
#include "treelab/events.hpp"

namespace treelab {

enum : std::uint8_t { kOwnerToOther = 1, kOtherToOwner = 2 };

struct ForestConfig {
  std::shared_ptr<const DualWindow> window;
  std::uint64_t seed = 0;  // sample_point seed of the source point, if sampled
  bool sampled = false;
  std::vector<std::uint8_t> present;    // per dual edge
  std::vector<std::uint8_t> direction;  // per dual edge, kOwnerToOther / kOtherToOwner bits
  std::vector<std::uint16_t> levels;    // block index of each vertex label

  static ForestConfig empty(std::shared_ptr<const DualWindow> window);
};

// y_v = alpha(v^-1) y for every dual vertex, propagated along the window's parent forest.
std::vector<LazyPoint> dual_labels(const DyadicSystem& sys, const DualWindow& dw, const LazyPoint& y);

// Edge [v, v g_j^-1] present iff y_v in A_j; v points along its present edge.
ForestConfig forest_restriction(const DyadicSystem& sys, const LazyPoint& y, std::shared_ptr<const DualWindow> dw);
ForestConfig forest_sample(const DyadicSystem& sys, std::uint64_t seed, std::shared_ptr<const DualWindow> dw);

// P(edge [g, g gamma_j^-1] present) = m(alpha(g^-1) y in A_j).
MeasureBounds edge_marginal(const DyadicSystem& sys, const Word& owner, int orbit, int truncation = kDefaultTruncation);
std::vector<Constraint> edge_constraints(const DyadicSystem& sys, const Word& owner, int orbit);

struct OneEndedReport {
  std::size_t interior_checked = 0;
  std::size_t chains_checked = 0;
  std::size_t outdegree_violations = 0;
  std::size_t two_cycles = 0;
  std::size_t level_violations = 0;
  std::vector<std::uint32_t> counterexample;  // vertex path

  bool ok() const { return outdegree_violations == 0 && two_cycles == 0 && level_violations == 0; }
};

// (a) interior out-degree 1, (b) no 2-cycles, (c) block index strictly
// increases along present edges.
OneEndedReport check_one_ended(const ForestConfig& cfg, const DyadicSystem& sys, const LazyPoint& y);

}  // namespace treelab

namespace treelab {

// One constraint [y_{shift v} in A_1] per vertex v owning an orbit-1 or
// orbit-2 edge of the window; their joint law is the law of the window's
// forest pattern translated by shift.
std::vector<Constraint> pattern_constraints(const DyadicSystem& sys, const DualWindow& dw, const Word& shift);

}  // namespace treelab
