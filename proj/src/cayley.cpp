#include "treelab/cayley.hpp"

namespace treelab {

WordGroup presentation_group(const Presentation& pres) {
  if (pres.kind == PresentationKind::Amalgam)
    throw UsageError("amalgam presentations use amalgam_window");
  std::vector<Generator<Word>> gens;
  auto elems = pres.generator_elements();
  for (std::size_t g = 0; g < elems.size(); ++g) gens.push_back({elems[g], pres.generator_names[g], 0});
  return WordGroup(pres.basis_alphabet(), std::move(gens));
}

CayleyWindow cayley_window(const Presentation& pres, int radius, std::size_t cap) {
  CayleyWindow cw{pres, presentation_group(pres), {}};
  cw.ball = build_ball(cw.group, radius, cap);
  return cw;
}

}  // namespace treelab
