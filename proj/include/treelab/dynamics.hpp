#pragma once

#include "treelab/translation.hpp"
#include "treelab/word.hpp"

#include <map>
#include <memory>

namespace treelab {

// Measure-preserving action of a free group of rank maps.size() on [0,1).
struct DyadicSystem {
  std::string name;
  int p = 0;  // genus of the forest layout (0 for other systems)
  std::vector<PiecewiseTranslation> maps;
  std::vector<PiecewiseTranslation> inverses;
  std::map<std::string, std::shared_ptr<const DyadicSet>> sets;

  std::size_t rank() const { return maps.size(); }
  const PiecewiseTranslation& letter_map(Letter l) const { return l.sign > 0 ? maps.at(l.gen) : inverses.at(l.gen); }
  std::shared_ptr<const DyadicSet> set(const std::string& name) const;
  // A_1, A_2 for j = 1, 2 and the empty set for j >= 3.
  std::shared_ptr<const DyadicSet> orbit_set(int j) const;
};

// Blocks B_i = 1^{i-1}0, U_i = 1^{i-1}00, V_i = 1^{i-1}01 (i >= 1).
DyadicInterval block(int i);
DyadicInterval block_left(int i);
DyadicInterval block_right(int i);
Pattern block_family();
Pattern left_family();
Pattern right_family();

DyadicSystem forest_dynamics(int p);
// Binary odometer x -> x + 1/2 with carries to the right.
DyadicSystem odometer_system();
DyadicSystem make_system(std::string name, int p, std::vector<PiecewiseTranslation> maps);

void apply_letter(const DyadicSystem& sys, Letter l, LazyPoint& x);
// alpha(w) x; the last letter acts first.
LazyPoint apply_word(const DyadicSystem& sys, const Word& w, LazyPoint x);
// i with x in B_i.
int block_index(const LazyPoint& x);

}  // namespace treelab
