#pragma once

#include "treelab/group_model.hpp"
#include "treelab/presentation.hpp"

namespace treelab {

// Ball in the Cayley graph of a free or surface presentation. Edge generator
// indices are presentation generator indices (k = 0 for surfaces).
struct CayleyWindow {
  Presentation pres;
  WordGroup group;
  Ball<Word, WordHash> ball;

  int radius() const { return ball.radius; }
  std::size_t size() const { return ball.size(); }
  std::string format(std::uint32_t v) const { return group.format(ball.vertices[v]); }
};

WordGroup presentation_group(const Presentation& pres);
CayleyWindow cayley_window(const Presentation& pres, int radius, std::size_t cap = kDefaultVertexCap);

}  // namespace treelab
