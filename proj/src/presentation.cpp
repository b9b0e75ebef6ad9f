#include "treelab/presentation.hpp"

#include "treelab/error.hpp"

namespace treelab {

Word kappa_word(int p) {
  std::vector<Letter> raw;
  for (int i = 0; i < p; ++i) {
    raw.push_back(gen_letter(i, 1));
    raw.push_back(gen_letter(p + i, 1));
    raw.push_back(gen_letter(i, -1));
    raw.push_back(gen_letter(p + i, -1));
  }
  return Word(raw);
}

Presentation free_presentation(int rank) {
  if (rank < 1) throw UsageError("free presentation needs rank >= 1");
  Presentation pres;
  pres.kind = PresentationKind::Free;
  pres.rank = rank;
  if (rank == 2) {
    pres.generator_names = {"a", "b"};
  } else {
    for (int i = 1; i <= rank; ++i) pres.generator_names.push_back("x" + std::to_string(i));
  }
  return pres;
}

Presentation surface_presentation(int p) {
  if (p < 1) throw UsageError("surface presentation needs p >= 1");
  Presentation pres;
  pres.kind = PresentationKind::Surface;
  pres.p = p;
  pres.rank = 2 * p;
  pres.generator_names.push_back("k");
  for (int i = 1; i <= p; ++i) pres.generator_names.push_back("a" + std::to_string(i));
  for (int i = 1; i <= p; ++i) pres.generator_names.push_back("b" + std::to_string(i));
  std::vector<Letter> rel{gen_letter(0, -1)};
  for (const Letter& l : kappa_word(p).letters()) rel.push_back(gen_letter(l.gen + 1, l.sign));
  pres.relators.push_back(rel);
  return pres;
}

Presentation amalgam_presentation(int n, int p) {
  if (n < 1 || p < 1) throw UsageError("amalgam presentation needs n >= 1 and p >= 1");
  Presentation pres;
  pres.kind = PresentationKind::Amalgam;
  pres.p = p;
  pres.n = n;
  pres.rank = 2 * p;
  pres.generator_names.push_back("k");
  Alphabet basis = Alphabet::free_basis(p);
  for (int c = 1; c <= n; ++c)
    for (int g = 0; g < 2 * p; ++g) pres.generator_names.push_back(basis.name(g) + "_" + std::to_string(c));
  for (int c = 0; c < n; ++c) {
    std::vector<Letter> rel{gen_letter(0, -1)};
    for (const Letter& l : kappa_word(p).letters()) rel.push_back(gen_letter(1 + c * 2 * p + l.gen, l.sign));
    pres.relators.push_back(rel);
  }
  return pres;
}

Alphabet Presentation::basis_alphabet() const {
  if (kind == PresentationKind::Free) return alphabet();
  return Alphabet::free_basis(p);
}

std::string Presentation::kind_tag() const {
  switch (kind) {
    case PresentationKind::Free:
      return "free(" + std::to_string(rank) + ")";
    case PresentationKind::Surface:
      return "surface(" + std::to_string(p) + ")";
    case PresentationKind::Amalgam:
      return "amalgam(" + std::to_string(n) + "," + std::to_string(p) + ")";
  }
  return "?";
}

std::vector<Word> Presentation::generator_elements() const {
  std::vector<Word> out;
  for (std::size_t g = 0; g < generator_count(); ++g) {
    Letter l = gen_letter(static_cast<int>(g));
    out.push_back(reduce_word(*this, std::span<const Letter>(&l, 1)));
  }
  return out;
}

Word reduce_word(const Presentation& pres, std::span<const Letter> raw) {
  if (pres.kind == PresentationKind::Amalgam)
    throw UsageError("amalgam words have no free-basis canonical form; use amalgam_normal_form");
  Word out;
  Word kappa = pres.kind == PresentationKind::Surface ? kappa_word(pres.p) : Word();
  for (const Letter& l : raw) {
    if (l.gen >= pres.generator_count() || (l.sign != 1 && l.sign != -1))
      throw UsageError("unknown generator index " + std::to_string(l.gen));
    if (pres.kind == PresentationKind::Free) {
      out.push(l);
    } else if (l.gen == 0) {
      out *= l.sign > 0 ? kappa : kappa.inverse();
    } else {
      out.push(gen_letter(l.gen - 1, l.sign));
    }
  }
  return out;
}

}  // namespace treelab
