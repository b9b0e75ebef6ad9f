#pragma once

#include "treelab/group_model.hpp"
#include "treelab/presentation.hpp"

namespace treelab {

struct Syllable {
  std::uint16_t copy;  // 1..n
  Word rep;            // left coset representative of rep<k>, never in <k>
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// t_1 ... t_r k^power with alternating copies.
struct AmalgamNormalForm {
  std::vector<Syllable> syllables;
  int power = 0;

  bool is_identity() const { return syllables.empty() && power == 0; }
  friend bool operator==(const AmalgamNormalForm&, const AmalgamNormalForm&) = default;
  std::size_t hash() const;
};

struct AmalgamHash {
  std::size_t operator()(const AmalgamNormalForm& x) const { return x.hash(); }
};

// A factor of the amalgam with its central-in-the-gluing element z: the
// surface word k in F_2p, or c^k in the infinite cyclic group <c>.
struct AmalgamFactor {
  enum class Kind { Surface, Cyclic } kind = Kind::Surface;
  int p = 1;      // Surface
  int order = 2;  // Cyclic: z = c^order
  static AmalgamFactor surface(int p) { return {Kind::Surface, p, 0}; }
  static AmalgamFactor cyclic(int k) { return {Kind::Cyclic, 0, k}; }
};

// Factors amalgamated along the infinite cyclic subgroups <z_c>, all z_c
// identified. The default is n copies of F_2p glued along <k>.
class AmalgamGroup {
 public:
  using Element = AmalgamNormalForm;
  using Hash = AmalgamHash;

  // include_kappa adds z to the generating set (orbit windows); the plain
  // amalgam window uses only the factors' own generators.
  AmalgamGroup(int n, int p, bool include_kappa = false);
  AmalgamGroup(std::vector<AmalgamFactor> factors, bool include_kappa);

  int n() const { return n_; }
  int p() const { return p_; }
  const Word& kappa() const { return z_[1]; }
  const Word& z(int copy) const { return z_.at(copy); }
  const AmalgamFactor& factor(int copy) const { return factors_.at(copy - 1); }
  const Alphabet& alphabet(int copy) const { return alphabets_.at(copy); }

  Element identity() const { return {}; }
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  const std::vector<Generator<Element>>& generators() const { return gens_; }
  std::string format(const Element& x) const;

  // x * w with w a word of copy c.
  Element multiply_word(Element x, int copy, const Word& w) const;
  Element embed(int copy, const Word& w) const { return multiply_word({}, copy, w); }
  Element kappa_power(int m) const;
  // u = rep * z^m with rep the canonical representative of u<z>.
  std::pair<Word, int> split_coset(int copy, const Word& u) const;
  std::pair<Word, int> split_coset(const Word& u) const { return split_coset(1, u); }
  // Key of the coset x<k>.
  Element coset_key(Element x) const {
    x.power = 0;
    return x;
  }

  const Presentation& presentation() const { return pres_; }

 private:
  int n_, p_;
  std::vector<AmalgamFactor> factors_;
  std::vector<Word> z_;             // indexed by copy, 1-based
  std::vector<Alphabet> alphabets_;  // indexed by copy, 1-based
  Presentation pres_;
  std::vector<Generator<Element>> gens_;
};

AmalgamNormalForm amalgam_normal_form(std::span<const Letter> raw, int n, int p);

struct AmalgamWindow {
  AmalgamGroup group;
  Ball<AmalgamNormalForm, AmalgamHash> ball;
  std::size_t size() const { return ball.size(); }
};

AmalgamWindow amalgam_window(int n, int p, int radius, std::size_t cap = kDefaultVertexCap);

}  // namespace treelab
