#pragma once

#include "treelab/word.hpp"

#include <string>
#include <vector>

namespace treelab {

enum class PresentationKind { Free, Surface, Amalgam };

struct Presentation {
  PresentationKind kind = PresentationKind::Free;
  int p = 0;     // genus for surface / amalgam
  int n = 1;     // number of copies for amalgam
  int rank = 0;  // rank of the free basis canonical forms live in
  std::vector<std::string> generator_names;
  std::vector<std::vector<Letter>> relators;  // raw, over presentation generators

  std::size_t generator_count() const { return generator_names.size(); }
  Alphabet alphabet() const { return Alphabet(generator_names); }
  Alphabet basis_alphabet() const;
  std::string kind_tag() const;
  // Canonical element of each presentation generator (free and surface kinds).
  std::vector<Word> generator_elements() const;
};

Presentation free_presentation(int rank);
Presentation surface_presentation(int p);
// Generators: k, then a1_c..bp_c for c = 1..n.
Presentation amalgam_presentation(int n, int p);

// prod_i [a_i, b_i] in the free basis a_1..a_p (0..p-1), b_1..b_p (p..2p-1).
Word kappa_word(int p);

// Free reduction into the basis; k is expanded for surface presentations.
Word reduce_word(const Presentation& pres, std::span<const Letter> raw);

}  // namespace treelab
