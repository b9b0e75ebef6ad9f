#include "treelab/group_model.hpp"

namespace treelab {

WordGroup WordGroup::free(const Alphabet& basis) {
  std::vector<Generator<Word>> gens;
  for (std::size_t g = 0; g < basis.size(); ++g)
    gens.push_back({Word::letter(static_cast<int>(g)), basis.name(static_cast<int>(g)), 0});
  return WordGroup(basis, std::move(gens));
}

}  // namespace treelab
