#include "treelab/dual.hpp"

#include <algorithm>
#include <deque>

namespace treelab {

namespace {

// Fills edges, adjacency, interior flags and the parent forest.
void finish(DualWindow& dw) {
  const int r = dw.complex->rank();
  const std::size_t n = dw.size();
  dw.owned.assign(n * r, -1);
  dw.incoming.assign(n * r, -1);
  for (std::uint32_t v = 0; v < n; ++v) {
    for (int j = 1; j <= r; ++j) {
      Word t = dw.trees[v];
      t.push(gen_letter(j - 1, -1));
      std::int32_t o = dw.find_tree(t);
      if (o < 0) continue;
      DualEdge e{v, static_cast<std::uint32_t>(o), j,
                 dw.complex->crossed_source(dw.cells[v], j - 1), -1};
      dw.owned[v * r + j - 1] = static_cast<std::int32_t>(dw.edges.size());
      dw.incoming[o * r + j - 1] = static_cast<std::int32_t>(dw.edges.size());
      dw.edges.push_back(std::move(e));
    }
  }
  dw.interior.assign(n, 0);
  dw.observed_interior_degree = -1;
  dw.degree_regular = true;
  for (std::uint32_t v = 0; v < n; ++v) {
    int deg = 0;
    bool full = true;
    for (int j = 0; j < r; ++j) {
      deg += (dw.owned[v * r + j] >= 0) + (dw.incoming[v * r + j] >= 0);
      full = full && dw.owned[v * r + j] >= 0 && dw.incoming[v * r + j] >= 0;
    }
    dw.interior[v] = full;
    if (!full) continue;
    if (dw.observed_interior_degree < 0) dw.observed_interior_degree = deg;
    if (deg != dw.observed_interior_degree) dw.degree_regular = false;
  }
  // BFS forest, roots taken in shortlex order of tree coordinates.
  std::vector<std::uint32_t> roots(n);
  for (std::uint32_t v = 0; v < n; ++v) roots[v] = v;
  std::sort(roots.begin(), roots.end(), [&](auto a, auto b) { return dw.trees[a] < dw.trees[b]; });
  dw.parent.assign(n, -2);
  dw.parent_step.assign(n, Letter{});
  dw.order.clear();
  for (std::uint32_t root : roots) {
    if (dw.parent[root] != -2) continue;
    dw.parent[root] = -1;
    std::deque<std::uint32_t> queue{root};
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      dw.order.push_back(v);
      for (int j = 1; j <= r; ++j) {
        std::int32_t eo = dw.owned[v * r + j - 1];
        if (eo >= 0) {
          std::uint32_t w = dw.edges[eo].other;
          if (dw.parent[w] == -2) {
            dw.parent[w] = static_cast<std::int32_t>(v);
            dw.parent_step[w] = gen_letter(j - 1, -1);
            queue.push_back(w);
          }
        }
        std::int32_t ei = dw.incoming[v * r + j - 1];
        if (ei >= 0) {
          std::uint32_t w = dw.edges[ei].owner;
          if (dw.parent[w] == -2) {
            dw.parent[w] = static_cast<std::int32_t>(v);
            dw.parent_step[w] = gen_letter(j - 1, 1);
            queue.push_back(w);
          }
        }
      }
    }
  }
}

void add_vertex(DualWindow& dw, Word tree, Word cell) {
  dw.by_tree.emplace(tree, static_cast<std::uint32_t>(dw.trees.size()));
  dw.trees.push_back(std::move(tree));
  dw.cells.push_back(std::move(cell));
}

}  // namespace

DualWindow dual_window(std::shared_ptr<const SurfaceComplex> complex, const CayleyWindow& cw) {
  if (cw.pres.kind != PresentationKind::Surface || cw.pres.p != complex->p())
    throw UsageError("dual_window needs a surface window of matching genus");
  DualWindow dw;
  dw.complex = complex;
  for (const Word& g : cw.ball.vertices) {
    bool full = true;
    for (const Word& v : complex->cell_vertices(g)) {
      if (!cw.ball.index.count(v)) {
        full = false;
        break;
      }
    }
    if (full) add_vertex(dw, complex->phi_inverse(g), g);
  }
  if (dw.size() == 0) throw UsageError("window too small to contain a full cell");
  finish(dw);
  // crossing map onto the primal window's edge list
  std::unordered_map<std::uint64_t, std::int64_t> edge_index;
  const std::uint64_t ng = cw.pres.generator_count();
  for (std::size_t i = 0; i < cw.ball.edges.size(); ++i) {
    const auto& e = cw.ball.edges[i];
    edge_index.emplace(e.source * ng + e.gen, static_cast<std::int64_t>(i));
  }
  for (DualEdge& e : dw.edges) {
    auto s = cw.ball.find(e.primal_source);
    if (!s) continue;
    auto it = edge_index.find(*s * ng + (e.orbit - 1) + 1);
    if (it != edge_index.end()) e.primal_edge = it->second;
  }
  return dw;
}

DualWindow dual_ball(std::shared_ptr<const SurfaceComplex> complex, int radius, std::size_t cap) {
  if (radius < 0) throw UsageError("radius must be >= 0");
  DualWindow dw;
  dw.complex = complex;
  const int r = complex->rank();
  add_vertex(dw, Word(), Word());
  for (std::size_t v = 0; v < dw.size(); ++v) {
    if (static_cast<int>(dw.trees[v].size()) >= radius) continue;
    for (int g = 0; g < r; ++g)
      for (int s : {1, -1}) {
        Letter l = gen_letter(g, s);
        if (!dw.trees[v].empty() && dw.trees[v].back() == l.inv()) continue;
        if (dw.size() >= cap) throw SizeError("dual window exceeds vertex cap");
        Word t = dw.trees[v];
        t.push(l);
        Word c = dw.cells[v] * (s > 0 ? complex->delta(g) : complex->delta(g).inverse());
        add_vertex(dw, std::move(t), std::move(c));
      }
  }
  finish(dw);
  return dw;
}

}  // namespace treelab
