#include "treelab/graphing.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <deque>
#include <random>
#include <unordered_set>

namespace treelab {

namespace {

using Sets = boost::disjoint_sets_with_storage<>;

std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::vector<std::uint32_t> forest_path(std::size_t n, const std::vector<WindowGraph::Edge>& edges, std::uint32_t a,
                                       std::uint32_t b, std::vector<std::uint32_t>* maps) {
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(n);
  for (const auto& e : edges) {
    adj[e.source].push_back({e.target, e.map});
    adj[e.target].push_back({e.source, e.map});
  }
  std::vector<std::int64_t> prev(n, -1);
  std::vector<std::uint32_t> via(n, 0);
  std::deque<std::uint32_t> q{a};
  prev[a] = a;
  while (!q.empty()) {
    std::uint32_t u = q.front();
    q.pop_front();
    if (u == b) break;
    for (auto [t, m] : adj[u]) {
      if (prev[t] >= 0) continue;
      prev[t] = u;
      via[t] = m;
      q.push_back(t);
    }
  }
  if (prev[b] < 0) return {};
  std::vector<std::uint32_t> path{b};
  std::vector<std::uint32_t> used;
  while (path.back() != a) {
    used.push_back(via[path.back()]);
    path.push_back(static_cast<std::uint32_t>(prev[path.back()]));
  }
  std::reverse(path.begin(), path.end());
  std::reverse(used.begin(), used.end());
  if (maps) *maps = used;
  return path;
}

namespace {

// First edge closing a cycle among edges accepted by `keep`.
bool find_cycle(const WindowGraph& g, const std::function<bool(const WindowGraph::Edge&)>& keep, TreeingReport& rep,
                std::size_t* counted) {
  Sets sets(g.vertex_count);
  std::vector<WindowGraph::Edge> forest;
  std::size_t n = 0;
  for (const auto& e : g.edges) {
    if (!keep(e)) continue;
    ++n;
    auto a = sets.find_set(e.source), b = sets.find_set(e.target);
    if (a == b) {
      std::vector<std::uint32_t> maps;
      rep.cycle = forest_path(g.vertex_count, forest, e.target, e.source, &maps);
      if (rep.cycle.empty()) rep.cycle = {e.source};
      rep.cycle.push_back(e.target);
      maps.push_back(e.map);
      rep.cycle_maps = maps;
      if (counted) *counted = n;
      return true;
    }
    sets.link(a, b);
    forest.push_back(e);
  }
  if (counted) *counted = n;
  return false;
}

}  // namespace

TreeingReport verify_treeing(const WindowGraph& g) {
  TreeingReport rep;
  for (std::size_t v = 0; v < g.vertex_count; ++v) rep.interior_vertices += g.interior[v];
  auto interior = [&](const WindowGraph::Edge& e) { return g.interior[e.source] && g.interior[e.target]; };
  std::size_t counted = 0;
  if (find_cycle(g, interior, rep, &counted)) {
    rep.verdict = Verdict::Fail;
  } else if (find_cycle(g, [](const WindowGraph::Edge&) { return true; }, rep, nullptr)) {
    rep.verdict = Verdict::Inconclusive;
  }
  rep.interior_edges = 0;
  for (const auto& e : g.edges) rep.interior_edges += interior(e);
  return rep;
}

GenerationReport verify_generation_graph(const WindowGraph& g, const std::vector<std::int32_t>& neighbors,
                                         std::size_t step_count, const std::vector<std::uint16_t>& depth,
                                         int core_radius) {
  GenerationReport rep;
  rep.direct_by_generator.assign(step_count / 2, 0);
  rep.edges_by_generator.assign(step_count / 2, 0);
  Sets sets(g.vertex_count);
  std::unordered_set<std::uint64_t> direct;
  for (const auto& e : g.edges) {
    sets.union_set(e.source, e.target);
    direct.insert(pair_key(e.source, e.target));
  }
  for (std::uint32_t v = 0; v < g.vertex_count; ++v) {
    if (depth[v] > core_radius || !g.interior[v]) continue;
    for (std::size_t s = 0; s < step_count; s += 2) {
      std::int32_t t = neighbors[v * step_count + s];
      if (t < 0 || !g.interior[t]) continue;
      ++rep.action_edges;
      ++rep.edges_by_generator[s / 2];
      if (direct.count(pair_key(v, static_cast<std::uint32_t>(t)))) {
        ++rep.direct;
        ++rep.direct_by_generator[s / 2];
      }
      if (sets.find_set(v) == sets.find_set(static_cast<std::uint32_t>(t)))
        ++rep.resolved;
      else
        ++rep.unresolved;
    }
  }
  return rep;
}

SplitReport verify_amalgam_split(const WindowGraph& g, const std::vector<std::uint8_t>& r1,
                                 const std::vector<std::uint8_t>& r2, const std::vector<std::uint64_t>& r3_key,
                                 std::size_t chains, std::uint64_t seed) {
  SplitReport rep;
  const std::size_t n = g.vertex_count;
  if (n == 0) return rep;
  Sets s1(n), s2(n);
  for (const auto& e : g.edges) {
    if (e.map < r1.size() && r1[e.map]) s1.union_set(e.source, e.target);
    if (e.map < r2.size() && r2[e.map]) s2.union_set(e.source, e.target);
  }
  // R_3 sits inside R_1 and R_2, so its classes glue window classes
  std::unordered_map<std::uint64_t, std::uint32_t> key_rep;
  for (std::uint32_t v = 0; v < n; ++v) {
    auto [it, fresh] = key_rep.emplace(r3_key[v], v);
    if (!fresh) {
      s1.union_set(it->second, v);
      s2.union_set(it->second, v);
    }
  }
  std::vector<std::uint32_t> c1(n), c2(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    c1[v] = static_cast<std::uint32_t>(s1.find_set(v));
    c2[v] = static_cast<std::uint32_t>(s2.find_set(v));
  }
  // class graph: node c1 for R_1 classes, n + c2 for R_2 classes, one edge per R_3 class
  {
    Sets b(2 * n);
    std::vector<WindowGraph::Edge> forest;
    for (const auto& [key, v] : key_rep) {
      (void)key;
      std::uint32_t a = c1[v], d = static_cast<std::uint32_t>(n) + c2[v];
      auto ra = b.find_set(a), rd = b.find_set(d);
      if (ra == rd) {
        rep.class_forest = false;
        rep.verdict = Verdict::Fail;
        std::vector<std::uint32_t> reps;
        forest_path(2 * n, forest, a, d, &reps);
        // alternate through the R_3 classes on the cycle
        rep.chain = reps;
        rep.chain.push_back(v);
        break;
      }
      b.link(ra, rd);
      forest.push_back({a, d, v});
    }
  }
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> members1, members2;
  std::vector<std::uint32_t> inner;
  for (std::uint32_t v = 0; v < n; ++v) {
    members1[c1[v]].push_back(v);
    members2[c2[v]].push_back(v);
    if (g.interior[v]) inner.push_back(v);
  }
  if (inner.empty()) return rep;
  std::mt19937_64 rng(seed);
  auto pick = [&](const std::vector<std::uint32_t>& xs) {
    return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
  };
  for (std::size_t c = 0; c < chains; ++c) {
    ++rep.chains_sampled;
    int k = 1 + static_cast<int>(rng() % 3);
    std::vector<std::uint32_t> x{pick(inner)};
    for (int j = 1; j <= 2 * k - 2; ++j) x.push_back(pick(j % 2 ? members1[c1[x.back()]] : members2[c2[x.back()]]));
    std::vector<std::uint32_t> close;
    for (std::uint32_t u : members1[c1[x.back()]])
      if (c2[u] == c2[x[0]]) close.push_back(u);
    if (close.empty()) continue;
    x.push_back(pick(close));
    ++rep.chains_closed;
    bool equal = false, r3 = false;
    for (std::size_t j = 0; j < x.size(); ++j) {
      std::uint32_t a = x[j], b = x[(j + 1) % x.size()];
      equal = equal || a == b;
      r3 = r3 || r3_key[a] == r3_key[b];
    }
    if (equal) ++rep.repeated_pairs;
    if (r3) {
      ++rep.r3_pairs;
    } else if (rep.verdict != Verdict::Fail || rep.chain.empty()) {
      rep.verdict = Verdict::Fail;
      rep.chain = x;
    }
  }
  return rep;
}

}  // namespace treelab
