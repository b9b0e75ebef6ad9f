#pragma once

#include "treelab/word.hpp"

#include <vector>

namespace treelab {

// Combinatorics of the planar Cayley complex of <k, a_i, b_i | k = prod [a_i, b_i]>.
//
// The cell based at g is the closed path g -> g k^-1 -> g k^-1 P_1 -> ... -> g,
// where P_t is the length-t prefix of w = a_1 b_1 a_1^-1 b_1^-1 ...
// The non-k edge [h, hx] lies on the cells h P_k^-1 k and h P_{m+1}^-1 k, where
// w_k = x and w_m = x^-1. The translation between them is
// delta_x = k^-1 P_k P_{m+1}^-1 k; the delta_x form a free basis and are used as
// the tree generators gamma_j = delta_{x_j}.
class SurfaceComplex {
 public:
  explicit SurfaceComplex(int p);

  int p() const { return p_; }
  int rank() const { return 2 * p_; }
  const Word& kappa() const { return kappa_; }
  const std::vector<Letter>& relator() const { return w_; }
  Word prefix(int t) const;

  // 4p+1 boundary vertices v_0 = g k^-1, ..., v_4p = g.
  std::vector<Word> cell_vertices(const Word& g) const;
  int position(int x) const { return pos_[x]; }
  int inverse_position(int x) const { return ipos_[x]; }
  // The cell owning the dual edge that crosses [h, hx], and the other one.
  Word owner_cell(const Word& h, int x) const { return h * owner_[x]; }
  Word other_cell(const Word& h, int x) const { return h * other_[x]; }
  // Source h of the crossed edge [h, hx] given the owning cell.
  Word crossed_source(const Word& owner, int x) const { return owner * owner_[x].inverse(); }

  const Word& delta(int x) const { return delta_[x]; }
  // phi: tree coordinates (gamma letters) -> basis words
  Word phi(const Word& gamma_word) const;
  Word phi_inverse(const Word& basis_word) const;
  const Word& gamma_of_basis(int x) const { return gamma_of_basis_[x]; }
  // phi^-1(P_{m+1}^-1 k): cell(h) offset of the owner of the x-crossing.
  const Word& owner_offset(int x) const { return owner_gamma_[x]; }
  int orbit_of(int x) const { return x + 1; }
  int generator_of_orbit(int j) const { return j - 1; }

  Alphabet basis_alphabet() const { return Alphabet::free_basis(p_); }
  Alphabet gamma_alphabet() const { return Alphabet::numbered("g", 2 * p_); }

 private:
  int p_;
  Word kappa_;
  std::vector<Letter> w_;
  std::vector<int> pos_, ipos_;
  std::vector<Word> owner_, other_, delta_, gamma_of_basis_, owner_gamma_;
};

// Tracked Nielsen reduction: returns gamma-expressions e_x with
// phi(e_x) = x for every basis letter x, or throws if the words are not a basis.
std::vector<Word> invert_basis(const std::vector<Word>& images);

}  // namespace treelab
