#pragma once

#include "treelab/cayley.hpp"
#include "treelab/surface.hpp"

#include <memory>
#include <unordered_map>

namespace treelab {

// Dual edge [owner, owner * gamma_j^-1] in tree coordinates. It crosses the
// primal edge [h, h x_j] with h = complex.crossed_source(cell(owner), x_j).
struct DualEdge {
  std::uint32_t owner;
  std::uint32_t other;
  int orbit;  // j, 1-based
  Word primal_source;
  std::int64_t primal_edge = -1;  // index into the source CayleyWindow's edges, if any
};

struct DualWindow {
  std::shared_ptr<const SurfaceComplex> complex;
  std::vector<Word> cells;  // basing element in the free basis
  std::vector<Word> trees;  // gamma coordinates
  std::unordered_map<Word, std::uint32_t, WordHash> by_tree;
  std::vector<std::uint8_t> interior;
  std::vector<DualEdge> edges;
  std::vector<std::int32_t> owned;     // [v * 2p + j - 1] edge [v, v g_j^-1]
  std::vector<std::int32_t> incoming;  // [v * 2p + j - 1] edge [v g_j, v]
  // Labels propagate along parents: trees[v] = trees[parent[v]] * parent_step[v].
  std::vector<std::int32_t> parent;
  std::vector<Letter> parent_step;
  std::vector<std::uint32_t> order;
  int observed_interior_degree = -1;
  bool degree_regular = true;

  int p() const { return complex->p(); }
  std::size_t size() const { return trees.size(); }
  std::int32_t owned_edge(std::uint32_t v, int j) const { return owned[v * 2 * p() + j - 1]; }
  std::int32_t incoming_edge(std::uint32_t v, int j) const { return incoming[v * 2 * p() + j - 1]; }
  std::int32_t find_tree(const Word& t) const {
    auto it = by_tree.find(t);
    return it == by_tree.end() ? -1 : static_cast<std::int32_t>(it->second);
  }
};

// Cells whose boundary lies in cw, with dual edges for shared non-k edges.
DualWindow dual_window(std::shared_ptr<const SurfaceComplex> complex, const CayleyWindow& cw);
// Ball of the given radius in tree coordinates.
DualWindow dual_ball(std::shared_ptr<const SurfaceComplex> complex, int radius,
                     std::size_t cap = kDefaultVertexCap);

}  // namespace treelab
