#include "doctest.h"
#include "oracles.hpp"

#include "treelab/constructions.hpp"

#include <random>
#include <set>

using namespace treelab;

namespace {

std::shared_ptr<const WordGroup> free2() {
  return std::make_shared<const WordGroup>(WordGroup::free(Alphabet(std::vector<std::string>{"a", "b"})));
}

Graphing<WordGroup> total_maps(std::vector<std::pair<std::string, Word>> maps) {
  Graphing<WordGroup> g;
  g.group = free2();
  for (auto& [name, w] : maps) g.maps.push_back({name, "free", w.inverse(), {}});
  return g;
}

const Word A = Word::letter(0), B = Word::letter(1);

bool interior_cycle_oracle(const WindowGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (const auto& e : g.edges)
    if (g.interior[e.source] && g.interior[e.target]) es.push_back({e.source, e.target});
  return oracle::has_cycle_exhaustive(g.vertex_count, es);
}

bool is_closed_walk(const WindowGraph& g, const TreeingReport& r) {
  if (r.cycle.size() < 2 || r.cycle.front() != r.cycle.back()) return false;
  if (r.cycle_maps.size() + 1 != r.cycle.size()) return false;
  std::multiset<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> edges;
  for (const auto& e : g.edges) {
    edges.insert({std::min(e.source, e.target), std::max(e.source, e.target), e.map});
  }
  for (std::size_t i = 0; i + 1 < r.cycle.size(); ++i) {
    auto a = r.cycle[i], b = r.cycle[i + 1];
    if (!edges.count({std::min(a, b), std::max(a, b), r.cycle_maps[i]})) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("orbit window basics") {
  auto g = total_maps({{"a", A}});
  auto w0 = orbit_window(g, 1, 0);
  CHECK(w0.size() == 1);
  CHECK(w0.graph.edges.empty());

  auto w = orbit_window(g, 1, 3);
  std::vector<int> out(w.size(), 0);
  for (const auto& e : w.graph.edges) {
    CHECK(w.ball->vertices[e.target] == w.ball->vertices[e.source] * A);
    ++out[e.source];
  }
  for (std::uint32_t v = 0; v < w.size(); ++v)
    if (w.ball->interior[v]) CHECK(out[v] == 1);
}

TEST_CASE("verify_treeing on free-group controls") {
  auto tree = orbit_window(total_maps({{"a", A}, {"b", B}}), 7, 4);
  CHECK(verify_treeing(tree.graph).verdict == Verdict::Pass);

  auto g = total_maps({{"a", A}, {"b", B}, {"ab", A * B}});
  auto w = orbit_window(g, 7, 3);
  TreeingReport r = verify_treeing(w.graph);
  REQUIRE(r.verdict == Verdict::Fail);
  CHECK(is_closed_walk(w.graph, r));
  CHECK(r.cycle.size() == 4);
  std::set<std::uint32_t> used(r.cycle_maps.begin(), r.cycle_maps.end());
  CHECK(used == std::set<std::uint32_t>{0, 1, 2});
}

TEST_CASE("verify_treeing agrees with exhaustive search on small graphs") {
  std::mt19937_64 rng(11);
  int fails = 0, passes = 0;
  for (int t = 0; t < 400; ++t) {
    WindowGraph g;
    g.vertex_count = 2 + rng() % 199;
    g.interior.resize(g.vertex_count);
    for (auto& f : g.interior) f = rng() % 5 != 0;
    // sparse random forests plus a few random chords
    for (std::uint32_t v = 1; v < g.vertex_count; ++v)
      if (rng() % 3) g.edges.push_back({v, static_cast<std::uint32_t>(rng() % v), 0});
    int chords = static_cast<int>(rng() % 5);
    for (int c = 0; c < chords; ++c)
      g.edges.push_back({static_cast<std::uint32_t>(rng() % g.vertex_count),
                         static_cast<std::uint32_t>(rng() % g.vertex_count), 1});
    TreeingReport r = verify_treeing(g);
    bool oracle_cycle = interior_cycle_oracle(g);
    CHECK((r.verdict == Verdict::Fail) == oracle_cycle);
    if (r.verdict == Verdict::Fail) {
      CHECK(is_closed_walk(g, r));
      ++fails;
    } else {
      ++passes;
    }
  }
  CHECK(fails > 20);
  CHECK(passes > 20);
}

TEST_CASE("verify_treeing agrees with exhaustive search on orbit windows") {
  // windows of at most 200 vertices, partial maps from the forest system
  auto st = surface_treeing(1);
  auto extra = st;
  extra.maps.push_back({"ab", "free", (A * B).inverse(), st.maps[1].domain});
  for (std::uint64_t s = 0; s < 60; ++s) {
    for (const auto* g : {&st, &extra}) {
      auto w = orbit_window(*g, s, 3);
      REQUIRE(w.size() <= 200);
      TreeingReport r = verify_treeing(w.graph);
      CHECK((r.verdict == Verdict::Fail) == interior_cycle_oracle(w.graph));
    }
  }
}

TEST_CASE("cost of graphings") {
  Graphing<WordGroup> empty;
  empty.group = free2();
  CHECK(cost(empty).total == MeasureBounds{Dyadic(0), Dyadic(0)});

  for (int p : {1, 2, 3}) {
    auto g = surface_treeing(p);
    CostValue c = cost(g);
    CHECK(c.per_map[0] == MeasureBounds{Dyadic(1), Dyadic(1)});
    CHECK(c.total.contains(Dyadic(2 * p)));
    CHECK(c.total.gap() <= Dyadic::pow2(-36));
    // superset graphing costs at least as much
    auto bigger = g;
    bigger.maps.push_back(g.maps[1]);
    CostValue cb = cost(bigger);
    CHECK(cb.total.lower >= c.total.lower);
    CHECK(cb.total.upper >= c.total.upper);
  }
}

TEST_CASE("generation: k-edges are always direct") {
  auto g = surface_treeing(1);
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto w = orbit_window(g, s, 4);
    GenerationReport r = verify_generation(w, 2);
    // generator 0 of the surface group is k
    CHECK(r.direct_by_generator[0] == r.edges_by_generator[0]);
    CHECK(r.edges_by_generator[0] > 0);
    CHECK(r.direct + (r.action_edges - r.direct) == r.action_edges);
  }
}

TEST_CASE("generation: unresolved fraction shrinks with the radius") {
  auto g = surface_treeing(1);
  auto small = std::make_shared<const BallOf<WordGroup>>(build_ball(*g.group, 4));
  auto large = std::make_shared<const BallOf<WordGroup>>(build_ball(*g.group, 8));
  std::size_t u4 = 0, u8 = 0, n4 = 0, n8 = 0;
  for (std::uint64_t s = 0; s < 8; ++s) {
    auto r4 = verify_generation(orbit_window(g, small, s), 2);
    auto r8 = verify_generation(orbit_window(g, large, s), 2);
    u4 += r4.unresolved;
    u8 += r8.unresolved;
    n4 += r4.action_edges;
    n8 += r8.action_edges;
    CHECK(r8.unresolved <= r4.unresolved);
  }
  CHECK(n4 == n8);
  CHECK(u8 < u4);
}

TEST_CASE("lift through the identity projection") {
  auto g = surface_treeing(1);
  Projection id{{0}, true};
  auto lifted = lift_graphing(id, g, g.factors);
  auto ball = std::make_shared<const BallOf<WordGroup>>(build_ball(*g.group, 4));
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto a = orbit_window(g, ball, s), b = orbit_window(lifted, ball, s);
    REQUIRE(a.graph.edges.size() == b.graph.edges.size());
    for (std::size_t i = 0; i < a.graph.edges.size(); ++i) {
      CHECK(a.graph.edges[i].source == b.graph.edges[i].source);
      CHECK(a.graph.edges[i].target == b.graph.edges[i].target);
      CHECK(a.graph.edges[i].map == b.graph.edges[i].map);
    }
  }
}

TEST_CASE("lift through a product projection") {
  // X = forest x odometer with the diagonal action (the odometer sees the
  // exponent sum of a); the projection forgets the odometer
  auto g = surface_treeing(1);
  auto odo = std::make_shared<const DyadicSystem>(odometer_system());
  auto factors = g.factors;
  factors.push_back({"odometer", odo, [](const Word& w) {
                       int e = 0;
                       for (const Letter& l : w.letters())
                         if (l.gen == 0) e += l.sign;
                       return Word::letter(0).power(e);
                     }});
  // source order: odometer first, forest second
  std::swap(factors[0], factors[1]);
  Projection proj{{1}, true};
  auto ball = std::make_shared<const BallOf<WordGroup>>(build_ball(*g.group, 4));
  auto lifted = lift_graphing_checked(proj, g, factors, ball, {1, 2, 3});
  std::size_t eq = 0;
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto w = orbit_window(lifted, ball, s);
    LiftReport r = check_lift(proj, g, lifted, w, 1000);
    CHECK(r.failures == 0);
    eq += r.equivariance_checks;
    CHECK(verify_treeing(w.graph).verdict != Verdict::Fail);
  }
  CHECK(eq >= 1000);
}

TEST_CASE("lift rejects a projection that is not locally one-to-one") {
  // for p = 2 the generator gamma_3 acts trivially on the forest system, so
  // forgetting the orbit identifies h and h phi(gamma_3)
  auto g = surface_treeing(2);
  Projection proj{{0}, false};
  auto ball = std::make_shared<const BallOf<WordGroup>>(build_ball(*g.group, 3));
  CHECK_THROWS_AS(lift_graphing_checked(proj, g, g.factors, ball, {5}), UsageError);
  Projection keep{{0}, true};
  CHECK_NOTHROW(lift_graphing_checked(keep, g, g.factors, ball, {5}));
}

TEST_CASE("amalgam split on amalgam treeing windows") {
  for (int n : {2, 3}) {
    auto g = assemble_amalgam_treeing(n, 1);
    auto ball = std::make_shared<const BallOf<AmalgamGroup>>(build_ball(*g.group, n == 2 ? 4 : 3));
    std::size_t closed = 0;
    for (std::uint64_t s = 0; s < 3; ++s) {
      auto w = orbit_window(g, ball, s);
      CHECK(verify_treeing(w.graph).verdict != Verdict::Fail);
      for (int c = 1; c <= n; ++c) {
        SplitReport r = amalgam_split_check(w, g, c, 400, s * 10 + c);
        CHECK(r.verdict == Verdict::Pass);
        CHECK(r.class_forest);
        closed += r.chains_closed;
      }
    }
    CHECK(closed >= 400);
  }
}

TEST_CASE("amalgam split detects a mislabeled gluing") {
  auto g = assemble_amalgam_treeing(2, 1);
  auto w = orbit_window(g, 3, 3);
  SplitReport r = amalgam_split_check(w, g, 1, 400, 9, true);
  REQUIRE(r.verdict == Verdict::Fail);
  REQUIRE(r.chain.size() >= 2);
  // consecutive chain points lie in one k-line but are distinct
  std::set<std::uint32_t> pts(r.chain.begin(), r.chain.end());
  CHECK(pts.size() >= 2);
}

TEST_CASE("free product split: chains close through a repeated point") {
  // Lambda = <k, c1> against the surface free part inside F(a, b, c1)
  auto g = compose_free_factor(surface_treeing(1), 1, 1);
  auto w = orbit_window(g, 4, 4);
  std::vector<std::uint8_t> r1(g.maps.size()), r2(g.maps.size());
  for (std::size_t k = 0; k < g.maps.size(); ++k) {
    r1[k] = g.maps[k].tag != "free";
    r2[k] = g.maps[k].tag == "free";
  }
  std::vector<std::uint64_t> key(w.size());
  for (std::uint32_t v = 0; v < w.size(); ++v) key[v] = v;
  SplitReport r = verify_amalgam_split(w.graph, r1, r2, key, 1000, 1);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.chains_closed > 0);
  CHECK(r.repeated_pairs == r.chains_closed);
  CHECK(verify_treeing(w.graph).verdict != Verdict::Fail);
}

TEST_CASE("compose_free_factor") {
  auto base = surface_treeing(1);
  auto same = compose_free_factor(base, 1, 0);
  CHECK(cost(same).total == cost(base).total);
  CHECK(same.maps.size() == base.maps.size());
  auto wb = orbit_window(base, 3, 3), ws = orbit_window(same, 3, 3);
  CHECK(wb.graph.edges.size() == ws.graph.edges.size());

  auto one = compose_free_factor(base, 1, 1);
  CostValue c = cost(one);
  CHECK(c.total.contains(Dyadic(3)));
  CHECK(c.total.gap() <= Dyadic::pow2(-36));
  for (std::uint64_t s = 0; s < 5; ++s) CHECK(verify_treeing(orbit_window(one, s, 3).graph).verdict != Verdict::Fail);
}
