#include "treelab/forest.hpp"

#include "treelab/error.hpp"

namespace treelab {

ForestConfig ForestConfig::empty(std::shared_ptr<const DualWindow> window) {
  ForestConfig cfg;
  cfg.present.assign(window->edges.size(), 0);
  cfg.direction.assign(window->edges.size(), 0);
  cfg.window = std::move(window);
  return cfg;
}

std::vector<LazyPoint> dual_labels(const DyadicSystem& sys, const DualWindow& dw, const LazyPoint& y) {
  std::vector<LazyPoint> labels(dw.size());
  for (std::uint32_t v : dw.order) {
    std::int32_t par = dw.parent[v];
    if (par < 0) {
      labels[v] = apply_word(sys, dw.trees[v].inverse(), y);
    } else {
      labels[v] = labels[par];
      apply_letter(sys, dw.parent_step[v].inv(), labels[v]);
    }
  }
  return labels;
}

ForestConfig forest_restriction(const DyadicSystem& sys, const LazyPoint& y, std::shared_ptr<const DualWindow> dw) {
  if (sys.p != dw->p()) throw UsageError("forest system and dual window have different p");
  ForestConfig cfg = ForestConfig::empty(dw);
  std::vector<LazyPoint> labels = dual_labels(sys, *dw, y);
  const auto& A1 = *sys.orbit_set(1);
  const auto& A2 = *sys.orbit_set(2);
  cfg.levels.resize(dw->size());
  for (std::uint32_t v = 0; v < dw->size(); ++v) {
    cfg.levels[v] = static_cast<std::uint16_t>(block_index(labels[v]));
    int j = A1.contains(labels[v]) ? 1 : (A2.contains(labels[v]) ? 2 : 0);
    if (j == 0) continue;
    std::int32_t e = dw->owned_edge(v, j);
    if (e < 0) continue;
    cfg.present[e] = 1;
    cfg.direction[e] = kOwnerToOther;
  }
  return cfg;
}

ForestConfig forest_sample(const DyadicSystem& sys, std::uint64_t seed, std::shared_ptr<const DualWindow> dw) {
  ForestConfig cfg = forest_restriction(sys, sample_point(seed), std::move(dw));
  cfg.seed = seed;
  cfg.sampled = true;
  return cfg;
}

std::vector<Constraint> edge_constraints(const DyadicSystem& sys, const Word& owner, int orbit) {
  return {{owner.inverse(), sys.orbit_set(orbit), false}};
}

MeasureBounds edge_marginal(const DyadicSystem& sys, const Word& owner, int orbit, int truncation) {
  if (orbit >= 3) return {Dyadic(0), Dyadic(0)};
  auto cs = edge_constraints(sys, owner, orbit);
  return event_probability(sys, cs, truncation);
}

OneEndedReport check_one_ended(const ForestConfig& cfg, const DyadicSystem& sys, const LazyPoint& y) {
  const DualWindow& dw = *cfg.window;
  OneEndedReport rep;
  std::vector<std::uint16_t> levels = cfg.levels;
  if (levels.size() != dw.size()) {
    std::vector<LazyPoint> labels = dual_labels(sys, dw, y);
    levels.resize(dw.size());
    for (std::uint32_t v = 0; v < dw.size(); ++v) levels[v] = static_cast<std::uint16_t>(block_index(labels[v]));
  }
  std::vector<std::uint32_t> outdeg(dw.size(), 0);
  std::vector<std::int32_t> next(dw.size(), -1);
  for (std::size_t e = 0; e < dw.edges.size(); ++e) {
    if (!cfg.present[e]) continue;
    const DualEdge& de = dw.edges[e];
    if (cfg.direction[e] & kOwnerToOther) {
      ++outdeg[de.owner];
      next[de.owner] = static_cast<std::int32_t>(de.other);
    }
    if (cfg.direction[e] & kOtherToOwner) {
      ++outdeg[de.other];
      next[de.other] = static_cast<std::int32_t>(de.owner);
    }
    if ((cfg.direction[e] & 3) == 3) {
      ++rep.two_cycles;
      if (rep.counterexample.empty()) rep.counterexample = {de.owner, de.other, de.owner};
    }
  }
  for (std::uint32_t v = 0; v < dw.size(); ++v) {
    if (!dw.interior[v]) continue;
    ++rep.interior_checked;
    if (outdeg[v] != 1) {
      ++rep.outdegree_violations;
      if (rep.counterexample.empty()) rep.counterexample = {v};
    }
  }
  // every pointer step along a chain must raise the block index
  for (std::size_t e = 0; e < dw.edges.size(); ++e) {
    if (!cfg.present[e]) continue;
    const DualEdge& de = dw.edges[e];
    for (int dir : {1, 2}) {
      if (!(cfg.direction[e] & dir)) continue;
      std::uint32_t v = dir == 1 ? de.owner : de.other;
      std::uint32_t w = dir == 1 ? de.other : de.owner;
      ++rep.chains_checked;
      if (levels[w] > levels[v]) continue;
      ++rep.level_violations;
      if (rep.counterexample.empty()) {
        std::vector<std::uint32_t> path{v, w};
        while (next[path.back()] >= 0 && path.size() < 64) {
          auto u = static_cast<std::uint32_t>(next[path.back()]);
          path.push_back(u);
          if (u == v) break;
        }
        rep.counterexample = path;
      }
    }
  }
  return rep;
}

}  // namespace treelab

namespace treelab {

std::vector<Constraint> pattern_constraints(const DyadicSystem& sys, const DualWindow& dw, const Word& shift) {
  std::vector<Constraint> cs;
  for (std::uint32_t v = 0; v < dw.size(); ++v) {
    if (dw.owned_edge(v, 1) < 0 && dw.owned_edge(v, 2) < 0) continue;
    cs.push_back({(shift * dw.trees[v]).inverse(), sys.orbit_set(1), false});
  }
  return cs;
}

}  // namespace treelab
