#pragma once

#include "treelab/events.hpp"
#include "treelab/group_model.hpp"

#include <functional>
#include <memory>

namespace treelab {

// Constraint on one factor of a product system.
struct DomainConstraint {
  int factor = 0;
  Constraint constraint;
};

// A coordinate of the product space: a dyadic system driven by a
// homomorphism from the ambient group into the system's free group.
template <class E>
struct Factor {
  std::string name;
  std::shared_ptr<const DyadicSystem> system;
  std::function<Word(const E&)> hom;
};

// phi(y) = alpha(mover) y on the domain.
template <class E>
struct PartialMap {
  std::string label;
  std::string tag;  // free-form group name used by split checks ("lambda", "copy1", ...)
  E mover;
  std::vector<DomainConstraint> domain;  // conjunction; empty = total
};

template <GroupModel M>
struct Graphing {
  using Element = typename M::Element;
  std::shared_ptr<const M> group;
  std::vector<Factor<Element>> factors;
  std::vector<PartialMap<Element>> maps;

  std::size_t find_map(const std::string& label) const {
    for (std::size_t k = 0; k < maps.size(); ++k)
      if (maps[k].label == label) return k;
    throw UsageError("no map labelled " + label);
  }
};

struct CostValue {
  MeasureBounds total{Dyadic(0), Dyadic(0)};
  std::vector<MeasureBounds> per_map;
};

// Domain bounds of one map: product over factors of the factor's event law.
template <class E>
MeasureBounds domain_bounds(const std::vector<Factor<E>>& factors, const PartialMap<E>& m,
                            int truncation = kDefaultTruncation) {
  MeasureBounds b{Dyadic(1), Dyadic(1)};
  for (std::size_t f = 0; f < factors.size(); ++f) {
    std::vector<Constraint> cs;
    for (const auto& dc : m.domain)
      if (dc.factor == static_cast<int>(f)) cs.push_back(dc.constraint);
    if (cs.empty()) continue;
    b = b * event_probability(*factors[f].system, cs, truncation);
  }
  return b;
}

template <GroupModel M>
CostValue cost(const Graphing<M>& g, int truncation = kDefaultTruncation) {
  CostValue c;
  for (const auto& m : g.maps) {
    c.per_map.push_back(domain_bounds(g.factors, m, truncation));
    c.total = c.total + c.per_map.back();
  }
  return c;
}

// Undirected multigraph of a window; vertices carry interior flags.
struct WindowGraph {
  struct Edge {
    std::uint32_t source, target;
    std::uint32_t map;
  };
  std::size_t vertex_count = 0;
  std::vector<std::uint8_t> interior;
  std::vector<Edge> edges;
};

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct TreeingReport {
  Verdict verdict = Verdict::Pass;
  std::size_t interior_vertices = 0;
  std::size_t interior_edges = 0;
  std::vector<std::uint32_t> cycle;      // closed vertex path (first = last)
  std::vector<std::uint32_t> cycle_maps;  // map index of each cycle edge
};

// Cycles among interior vertices fail; cycles that need a boundary vertex
// are inconclusive.
TreeingReport verify_treeing(const WindowGraph& g);

// vertices on a path from a to b in the forest spanned by `edges` (empty if none)
std::vector<std::uint32_t> forest_path(std::size_t n, const std::vector<WindowGraph::Edge>& edges,
                                       std::uint32_t a, std::uint32_t b,
                                       std::vector<std::uint32_t>* maps = nullptr);

struct GenerationReport {
  std::size_t action_edges = 0;   // interior action edges near the centre
  std::size_t direct = 0;         // realized by a single graphing edge
  std::size_t resolved = 0;       // endpoints connected inside the window
  std::size_t unresolved = 0;
  std::vector<std::size_t> direct_by_generator;
  std::vector<std::size_t> edges_by_generator;
  double unresolved_fraction() const {
    return action_edges == 0 ? 0.0 : static_cast<double>(unresolved) / static_cast<double>(action_edges);
  }
};

struct SplitReport {
  Verdict verdict = Verdict::Pass;
  std::size_t chains_sampled = 0;
  std::size_t chains_closed = 0;
  std::size_t r3_pairs = 0;        // closed chains resolved by an R_3-equivalent pair
  std::size_t repeated_pairs = 0;  // ... by an equal consecutive pair
  bool class_forest = true;        // the R_1/R_2 class tree glued along R_3 classes is a forest
  std::vector<std::uint32_t> chain;  // counterexample x_0 .. x_{2k-1}
};

// R_1, R_2: graphing edges with map index in r1 / r2 (a map may be in both).
// R_3: vertices with equal r3_key. Classes are taken inside the window.
SplitReport verify_amalgam_split(const WindowGraph& g, const std::vector<std::uint8_t>& r1,
                                 const std::vector<std::uint8_t>& r2, const std::vector<std::uint64_t>& r3_key,
                                 std::size_t chains, std::uint64_t seed);

template <GroupModel M>
struct OrbitWindow {
  using Element = typename M::Element;
  std::shared_ptr<const BallOf<M>> ball;
  std::uint64_t seed = 0;
  std::vector<std::vector<LazyPoint>> labels;  // [factor][vertex]
  WindowGraph graph;
  std::size_t dangling = 0;  // edges whose target leaves the ball
  std::vector<std::uint8_t> in_domain;  // [v * maps + k]
  std::size_t map_count = 0;

  std::size_t size() const { return ball->size(); }
  bool has_map(std::uint32_t v, std::size_t k) const { return in_domain[v * map_count + k] != 0; }
};

// Base point of factor f for window seed s.
inline LazyPoint factor_base_point(std::uint64_t seed, std::size_t f) {
  return sample_point(derive_seed(seed, 0xFAC7000 + f));
}

template <class E>
bool in_domain(const std::vector<Factor<E>>& factors, const PartialMap<E>& m,
               const std::vector<const LazyPoint*>& point) {
  for (const auto& dc : m.domain) {
    const DyadicSystem& sys = *factors[dc.factor].system;
    if (!satisfies(sys, dc.constraint, *point[dc.factor])) return false;
  }
  return true;
}

template <GroupModel M>
OrbitWindow<M> orbit_window(const Graphing<M>& g, std::shared_ptr<const BallOf<M>> ball, std::uint64_t seed,
                            const std::vector<LazyPoint>* base = nullptr) {
  using E = typename M::Element;
  const M& model = *g.group;
  OrbitWindow<M> w;
  w.ball = ball;
  w.seed = seed;
  w.map_count = g.maps.size();
  const auto& gens = model.generators();
  std::vector<E> steps;
  for (const auto& gen : gens) {
    steps.push_back(gen.element);
    steps.push_back(model.inverse(gen.element));
  }
  // y_v = alpha(hom(v)^-1) y, grown along the BFS parents
  w.labels.resize(g.factors.size());
  for (std::size_t f = 0; f < g.factors.size(); ++f) {
    const Factor<E>& fac = g.factors[f];
    std::vector<Word> step_inv;
    for (const E& s : steps) step_inv.push_back(fac.hom(s).inverse());
    auto& lab = w.labels[f];
    lab.resize(ball->size());
    for (std::uint32_t v = 0; v < ball->size(); ++v) {
      std::int32_t par = ball->parent[v];
      if (par < 0) {
        LazyPoint y0 = base ? (*base)[f] : factor_base_point(seed, f);
        lab[v] = apply_word(*fac.system, fac.hom(ball->vertices[v]).inverse(), y0);
      } else {
        lab[v] = apply_word(*fac.system, step_inv[ball->parent_step[v]], lab[par]);
      }
    }
  }
  // mover^-1 as a step, when it is one
  std::vector<std::int32_t> map_step(g.maps.size(), -1);
  std::vector<E> mover_inv(g.maps.size());
  for (std::size_t k = 0; k < g.maps.size(); ++k) {
    mover_inv[k] = model.inverse(g.maps[k].mover);
    for (std::size_t s = 0; s < steps.size(); ++s)
      if (steps[s] == mover_inv[k]) {
        map_step[k] = static_cast<std::int32_t>(s);
        break;
      }
  }
  w.graph.vertex_count = ball->size();
  w.graph.interior = ball->interior;
  w.in_domain.assign(ball->size() * g.maps.size(), 0);
  std::vector<const LazyPoint*> point(g.factors.size());
  for (std::uint32_t v = 0; v < ball->size(); ++v) {
    for (std::size_t f = 0; f < g.factors.size(); ++f) point[f] = &w.labels[f][v];
    for (std::size_t k = 0; k < g.maps.size(); ++k) {
      if (!in_domain(g.factors, g.maps[k], point)) continue;
      w.in_domain[v * g.maps.size() + k] = 1;
      std::int32_t t;
      if (map_step[k] >= 0) {
        t = ball->neighbor(v, static_cast<std::size_t>(map_step[k]));
      } else {
        auto f = ball->find(model.multiply(ball->vertices[v], mover_inv[k]));
        t = f ? static_cast<std::int32_t>(*f) : -1;
      }
      if (t < 0) {
        ++w.dangling;
        continue;
      }
      w.graph.edges.push_back({v, static_cast<std::uint32_t>(t), static_cast<std::uint32_t>(k)});
    }
  }
  return w;
}

template <GroupModel M>
OrbitWindow<M> orbit_window(const Graphing<M>& g, std::uint64_t seed, int radius,
                            std::size_t cap = kDefaultVertexCap) {
  auto ball = std::make_shared<const BallOf<M>>(build_ball(*g.group, radius, cap));
  return orbit_window(g, ball, seed);
}

// Action edges (v, v s) for generator steps of the ball; checked for vertices
// of depth <= core_radius whose neighbour is interior.
GenerationReport verify_generation_graph(const WindowGraph& g, const std::vector<std::int32_t>& neighbors,
                                         std::size_t step_count, const std::vector<std::uint16_t>& depth,
                                         int core_radius);

template <GroupModel M>
GenerationReport verify_generation(const OrbitWindow<M>& w, int core_radius) {
  return verify_generation_graph(w.graph, w.ball->neighbors, w.ball->step_count, w.ball->depth, core_radius);
}

// Projection of a product space onto some of its factors. Base factor k is
// source factor factor_map[k]. When keeps_orbit is set the projection also
// retains the symbolic orbit point, so it is injective on orbits outright.
struct Projection {
  std::vector<int> factor_map;
  bool keeps_orbit = true;
};

struct LiftReport {
  std::size_t points_checked = 0;
  std::size_t domain_checks = 0;
  std::size_t equivariance_checks = 0;
  std::size_t failures = 0;
};

// The lifted graphing over `source_factors`: same movers, domains pulled
// back through the projection.
template <GroupModel M>
Graphing<M> lift_graphing(const Projection& proj, const Graphing<M>& base,
                          std::vector<Factor<typename M::Element>> source_factors) {
  if (proj.factor_map.size() != base.factors.size())
    throw UsageError("projection does not cover every base factor");
  for (int f : proj.factor_map)
    if (f < 0 || f >= static_cast<int>(source_factors.size())) throw UsageError("projection factor out of range");
  Graphing<M> out;
  out.group = base.group;
  out.factors = std::move(source_factors);
  for (const auto& m : base.maps) {
    PartialMap<typename M::Element> lm = m;
    for (auto& dc : lm.domain) dc.factor = proj.factor_map[dc.factor];
    out.maps.push_back(std::move(lm));
  }
  return out;
}

// Sample check of local injectivity on a window: distinct vertices must have
// distinct projected labels. Returns the offending pair if any.
template <GroupModel M>
std::optional<std::pair<std::uint32_t, std::uint32_t>> injectivity_counterexample(const Projection& proj,
                                                                               const OrbitWindow<M>& w) {
  if (proj.keeps_orbit) return std::nullopt;
  std::unordered_map<std::size_t, std::vector<std::uint32_t>> seen;
  for (std::uint32_t v = 0; v < w.size(); ++v) {
    std::size_t h = 0;
    for (int f : proj.factor_map) h = mix64(h ^ w.labels[f][v].hash());
    auto& bucket = seen[h];
    for (std::uint32_t u : bucket) {
      bool same = true;
      for (int f : proj.factor_map) same = same && w.labels[f][u] == w.labels[f][v];
      if (same) return std::make_pair(u, v);
    }
    bucket.push_back(v);
  }
  return std::nullopt;
}

// Lift checked on a window of the source: throws UsageError with the
// counterexample when the projection is not injective on the orbit piece.
template <GroupModel M>
Graphing<M> lift_graphing_checked(const Projection& proj, const Graphing<M>& base,
                                  std::vector<Factor<typename M::Element>> source_factors,
                                  std::shared_ptr<const BallOf<M>> ball, const std::vector<std::uint64_t>& seeds) {
  Graphing<M> lifted = lift_graphing(proj, base, std::move(source_factors));
  for (std::uint64_t s : seeds) {
    auto w = orbit_window(lifted, ball, s);
    if (auto bad = injectivity_counterexample(proj, w))
      throw UsageError("projection is not locally one-to-one: vertices " + base.group->format(ball->vertices[bad->first]) +
                       " and " + base.group->format(ball->vertices[bad->second]) + " have equal images");
  }
  return lifted;
}

// x in Dom(lift) iff p(x) in Dom(base) on vertex labels of a source window,
// and p(lift(x)) = base(p(x)) along every window edge of the lift.
template <GroupModel M>
LiftReport check_lift(const Projection& proj, const Graphing<M>& base, const Graphing<M>& lifted,
                      const OrbitWindow<M>& w, std::size_t max_points = 1000) {
  LiftReport rep;
  std::vector<const LazyPoint*> src(lifted.factors.size()), dst(base.factors.size());
  std::uint32_t n = static_cast<std::uint32_t>(std::min<std::size_t>(w.size(), max_points));
  for (std::uint32_t v = 0; v < n; ++v) {
    ++rep.points_checked;
    for (std::size_t f = 0; f < src.size(); ++f) src[f] = &w.labels[f][v];
    for (std::size_t k = 0; k < base.factors.size(); ++k) dst[k] = src[proj.factor_map[k]];
    for (std::size_t m = 0; m < base.maps.size(); ++m) {
      ++rep.domain_checks;
      if (w.has_map(v, m) != in_domain(base.factors, base.maps[m], dst)) ++rep.failures;
    }
  }
  for (const auto& e : w.graph.edges) {
    if (e.source >= n) continue;
    ++rep.equivariance_checks;
    for (std::size_t k = 0; k < base.factors.size(); ++k) {
      const auto& bf = base.factors[k];
      LazyPoint expect = apply_word(*bf.system, bf.hom(base.maps[e.map].mover), w.labels[proj.factor_map[k]][e.source]);
      if (!(w.labels[proj.factor_map[k]][e.target] == expect)) ++rep.failures;
    }
  }
  return rep;
}

}  // namespace treelab
