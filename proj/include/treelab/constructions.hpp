#pragma once

#include "treelab/amalgam.hpp"
#include "treelab/forest.hpp"
#include "treelab/graphing.hpp"

namespace treelab {

// F_2p generated by k, a_i, b_i (elements are basis words).
std::shared_ptr<const WordGroup> surface_group(int p);

// Forest dynamics as a factor of F_2p: h acts through phi^-1(h).
Factor<Word> forest_factor(std::shared_ptr<const SurfaceComplex> complex, std::shared_ptr<const DyadicSystem> sys);

// Domain of the x-map: the edge [h, hx] is not crossed by the forest.
DomainConstraint kept_edge_constraint(const SurfaceComplex& complex, const DyadicSystem& sys, int x, int factor = 0);

// phi_k total with mover k^-1; phi_x for each basis letter x with mover x^-1
// on the kept-edge event. Tags: "lambda" for k, "free" for the others.
Graphing<WordGroup> surface_treeing(int p);

// H(f*): primal window minus the edges crossed by present dual edges. For a
// sampled configuration, crossings by cells outside the dual window are
// evaluated from the source point.
struct SpanningSubgraph {
  std::shared_ptr<const CayleyWindow> window;
  std::vector<std::uint8_t> kept;  // per window edge
  std::size_t kappa_edges = 0;
  std::size_t kappa_kept = 0;
  std::size_t removed = 0;
  std::size_t kept_non_kappa = 0;
  TreeingReport treeing;
  // removed edges whose bush (the finite side of the crossing dual edge)
  // stays inside the dual window, and how many of them are reconnected
  std::size_t interior_bush = 0;
  std::size_t reconnected = 0;
  std::vector<std::uint32_t> unreconnected;  // window edge indices

  WindowGraph graph() const;
  bool ok() const {
    return kappa_kept == kappa_edges && treeing.verdict != Verdict::Fail && reconnected == interior_bush;
  }
};

SpanningSubgraph pushforward_tree(const ForestConfig& cfg, std::shared_ptr<const CayleyWindow> cw);

// Graphing over the amalgam of n copies of F_2p along <k>, generated by k and
// the copies' letters: vertex labels see the forest factor through the
// projection to F_2p. Tags: "lambda" for k, "copy<c>" for copy c.
Graphing<AmalgamGroup> assemble_amalgam_treeing(int n, int p);

// R_1 = k and copy c, R_2 = k and the other copies, R_3 = k-lines.
SplitReport amalgam_split_check(const OrbitWindow<AmalgamGroup>& w, const Graphing<AmalgamGroup>& g, int copy,
                                std::size_t chains, std::uint64_t seed, bool mislabel = false);

// Lambda < Gamma witness composed with a free factor F_r = <c_1..c_r>: the
// group becomes F(a_i, b_i, c_j) with the extra generators; witness factors
// forget the c letters, an independent odometer coordinate sees only the c
// letters, and each c_j is a total map tagged "extra".
Graphing<WordGroup> compose_free_factor(const Graphing<WordGroup>& witness, int p, int r);

}  // namespace treelab
