#include "doctest.h"

#include "treelab/constructions.hpp"

#include <cmath>
#include <set>

using namespace treelab;

namespace {

struct Primal {
  std::shared_ptr<const SurfaceComplex> complex;
  std::shared_ptr<const CayleyWindow> cw;
  std::shared_ptr<const DualWindow> dw;
};

Primal primal(int p, int r) {
  Primal w;
  w.complex = std::make_shared<const SurfaceComplex>(p);
  w.cw = std::make_shared<const CayleyWindow>(cayley_window(surface_presentation(p), r));
  w.dw = std::make_shared<const DualWindow>(dual_window(w.complex, *w.cw));
  return w;
}

}  // namespace

TEST_CASE("pushforward of the empty forest keeps everything") {
  Primal w = primal(1, 4);
  SpanningSubgraph h = pushforward_tree(ForestConfig::empty(w.dw), w.cw);
  CHECK(h.removed == 0);
  CHECK(h.kappa_kept == h.kappa_edges);
  for (auto k : h.kept) CHECK(k == 1);
}

TEST_CASE("pushforward of sampled forests") {
  Primal w = primal(1, 5);
  DyadicSystem sys = forest_dynamics(1);
  for (std::uint64_t s = 0; s < 40; ++s) {
    ForestConfig cfg = forest_sample(sys, s, w.dw);
    SpanningSubgraph h = pushforward_tree(cfg, w.cw);
    CHECK(h.kappa_kept == h.kappa_edges);
    CHECK(h.treeing.verdict != Verdict::Fail);
    CHECK(h.reconnected == h.interior_bush);
    CHECK(h.removed > 0);
    CHECK(h.ok());
  }
}

TEST_CASE("pushforward equals the surface treeing's window") {
  // same base point: edge [h, hx] kept iff h is in the domain of phi_x
  Primal w = primal(1, 4);
  auto sys = std::make_shared<const DyadicSystem>(forest_dynamics(1));
  Graphing<WordGroup> g = surface_treeing(1);
  auto ball = std::make_shared<const BallOf<WordGroup>>(w.cw->ball);
  for (std::uint64_t s = 0; s < 20; ++s) {
    std::vector<LazyPoint> base{sample_point(s)};
    auto ow = orbit_window(g, ball, s, &base);
    std::set<std::pair<std::uint32_t, std::uint32_t>> a;
    for (const auto& e : ow.graph.edges) a.insert({e.source, e.target});
    auto kept_set = [&](const SpanningSubgraph& h) {
      std::set<std::pair<std::uint32_t, std::uint32_t>> b;
      for (std::size_t i = 0; i < h.kept.size(); ++i)
        if (h.kept[i]) b.insert({w.cw->ball.edges[i].source, w.cw->ball.edges[i].target});
      return b;
    };
    SpanningSubgraph sampled = pushforward_tree(forest_sample(*sys, s, w.dw), w.cw);
    CHECK(kept_set(sampled) == a);

    // without the source point only crossings inside the dual window are known
    SpanningSubgraph h = pushforward_tree(forest_restriction(*sys, base[0], w.dw), w.cw);
    auto b = kept_set(h);
    for (const auto& e : a) CHECK(b.count(e));
    for (std::size_t i = 0; i < h.kept.size(); ++i) {
      const auto& e = w.cw->ball.edges[i];
      if (!h.kept[i] || a.count({e.source, e.target})) continue;
      REQUIRE(e.gen > 0);
      const Word& src = w.cw->ball.vertices[e.source];
      int x = static_cast<int>(e.gen) - 1;
      bool both = w.dw->find_tree(w.complex->phi_inverse(w.complex->owner_cell(src, x))) >= 0 &&
                  w.dw->find_tree(w.complex->phi_inverse(w.complex->other_cell(src, x))) >= 0;
      CHECK_FALSE(both);
    }
  }
}

TEST_CASE("expected kept edges per vertex is 2p") {
  for (int p : {1, 2}) {
    // crossings outside the dual window come from the source point, so a
    // small window is exact at the identity
    Primal w = primal(p, std::max(3, 2 * p));
    DyadicSystem sys = forest_dynamics(p);
    const std::size_t n = p == 1 ? 4000 : 1500;
    double sum = 0, sum2 = 0;
    for (std::uint64_t s = 0; s < n; ++s) {
      SpanningSubgraph h = pushforward_tree(forest_sample(sys, 10000 + s, w.dw), w.cw);
      int k = 0;
      for (std::size_t i = 0; i < h.kept.size(); ++i) k += w.cw->ball.edges[i].source == 0 && h.kept[i];
      sum += k;
      sum2 += static_cast<double>(k) * k;
    }
    double mean = sum / n, var = std::max(sum2 / n - mean * mean, 1e-12);
    CHECK(std::abs(mean - 2 * p) <= 3 * std::sqrt(var / n) + 1e-9);
  }
}

TEST_CASE("surface treeing windows are trees and generate") {
  auto g = surface_treeing(1);
  auto ball = std::make_shared<const BallOf<WordGroup>>(build_ball(*g.group, 5));
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto w = orbit_window(g, ball, s);
    CHECK(verify_treeing(w.graph).verdict != Verdict::Fail);
    GenerationReport r = verify_generation(w, 2);
    CHECK(r.direct_by_generator[0] == r.edges_by_generator[0]);
  }
}

TEST_CASE("amalgam treeing assembly") {
  SUBCASE("n = 1 is the surface treeing") {
    auto a = assemble_amalgam_treeing(1, 1);
    auto s = surface_treeing(1);
    CHECK(cost(a).total == cost(s).total);
    auto ba = std::make_shared<const BallOf<AmalgamGroup>>(build_ball(*a.group, 4));
    auto bs = std::make_shared<const BallOf<WordGroup>>(build_ball(*s.group, 4));
    REQUIRE(ba->size() == bs->size());
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      auto wa = orbit_window(a, ba, seed);
      auto ws = orbit_window(s, bs, seed);
      auto flat = [&](std::uint32_t v) {
        Word w;
        for (const Syllable& x : ba->vertices[v].syllables) w *= x.rep;
        return w * kappa_word(1).power(ba->vertices[v].power);
      };
      std::set<std::pair<Word, Word>> ea, es;
      for (const auto& e : wa.graph.edges) ea.insert({flat(e.source), flat(e.target)});
      for (const auto& e : ws.graph.edges) es.insert({bs->vertices[e.source], bs->vertices[e.target]});
      CHECK(ea == es);
    }
  }
  SUBCASE("map families and costs") {
    for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
      auto g = assemble_amalgam_treeing(n, p);
      CHECK(g.maps.size() == static_cast<std::size_t>(1 + n * 2 * p));
      CostValue c = cost(g);
      CHECK(c.total.contains(Dyadic(1 + n * (2 * p - 1))));
      CHECK(c.total.gap() <= Dyadic::pow2(-36));
    }
  }
}
