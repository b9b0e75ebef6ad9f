#include "treelab/surface.hpp"

#include "treelab/error.hpp"
#include "treelab/presentation.hpp"

namespace treelab {

SurfaceComplex::SurfaceComplex(int p) : p_(p) {
  if (p < 1) throw UsageError("surface complex needs p >= 1");
  kappa_ = kappa_word(p);
  w_ = kappa_.letters();
  const int r = 2 * p;
  pos_.assign(r, -1);
  ipos_.assign(r, -1);
  for (int t = 0; t < static_cast<int>(w_.size()); ++t) (w_[t].sign > 0 ? pos_ : ipos_)[w_[t].gen] = t;
  for (int x = 0; x < r; ++x) {
    Word left = prefix(pos_[x]).inverse() * kappa_;
    Word right = prefix(ipos_[x] + 1).inverse() * kappa_;
    other_.push_back(left);
    owner_.push_back(right);
    delta_.push_back(left.inverse() * right);
  }
  gamma_of_basis_ = invert_basis(delta_);
  for (int x = 0; x < r; ++x) owner_gamma_.push_back(phi_inverse(owner_[x]));
}

Word SurfaceComplex::prefix(int t) const {
  return Word(std::span<const Letter>(w_.data(), static_cast<std::size_t>(t)));
}

std::vector<Word> SurfaceComplex::cell_vertices(const Word& g) const {
  std::vector<Word> out;
  Word v = g * kappa_.inverse();
  out.push_back(v);
  for (const Letter& l : w_) out.push_back(v.push(l));
  return out;
}

Word SurfaceComplex::phi(const Word& gamma_word) const {
  Word out;
  for (const Letter& l : gamma_word.letters()) out *= l.sign > 0 ? delta_[l.gen] : delta_[l.gen].inverse();
  return out;
}

Word SurfaceComplex::phi_inverse(const Word& basis_word) const {
  Word out;
  for (const Letter& l : basis_word.letters())
    out *= l.sign > 0 ? gamma_of_basis_[l.gen] : gamma_of_basis_[l.gen].inverse();
  return out;
}

std::vector<Word> invert_basis(const std::vector<Word>& images) {
  const std::size_t n = images.size();
  std::vector<Word> u = images, e;
  for (std::size_t i = 0; i < n; ++i) e.push_back(Word::letter(static_cast<int>(i)));
  for (;;) {
    std::size_t best_gain = 0, bi = 0;
    Word bu, be;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        for (int s : {1, -1}) {
          Word uj = s > 0 ? u[j] : u[j].inverse();
          Word ej = s > 0 ? e[j] : e[j].inverse();
          for (int side = 0; side < 2; ++side) {
            Word c = side == 0 ? u[i] * uj : uj * u[i];
            if (c.size() < u[i].size() && u[i].size() - c.size() > best_gain) {
              best_gain = u[i].size() - c.size();
              bi = i;
              bu = c;
              be = side == 0 ? e[i] * ej : ej * e[i];
            }
          }
        }
      }
    if (best_gain == 0) break;
    u[bi] = bu;
    e[bi] = be;
  }
  std::vector<Word> out(n);
  std::vector<bool> seen(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i].size() != 1 || u[i][0].gen >= n || seen[u[i][0].gen])
      throw Error("Nielsen reduction did not reach a basis");
    seen[u[i][0].gen] = true;
    out[u[i][0].gen] = u[i][0].sign > 0 ? e[i] : e[i].inverse();
  }
  return out;
}

}  // namespace treelab
