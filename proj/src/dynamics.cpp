#include "treelab/dynamics.hpp"

#include "treelab/error.hpp"

namespace treelab {

namespace {

std::string ones(int k) { return std::string(static_cast<std::size_t>(k), '1'); }

}  // namespace

DyadicInterval block(int i) { return DyadicInterval::from_bits(ones(i - 1) + "0"); }
DyadicInterval block_left(int i) { return DyadicInterval::from_bits(ones(i - 1) + "00"); }
DyadicInterval block_right(int i) { return DyadicInterval::from_bits(ones(i - 1) + "01"); }

Pattern block_family() { return Pattern::family("", true, -1, "0"); }
Pattern left_family() { return Pattern::family("", true, -1, "00"); }
Pattern right_family() { return Pattern::family("", true, -1, "01"); }

std::shared_ptr<const DyadicSet> DyadicSystem::set(const std::string& n) const {
  auto it = sets.find(n);
  if (it == sets.end()) throw UsageError("system " + name + " has no set " + n);
  return it->second;
}

std::shared_ptr<const DyadicSet> DyadicSystem::orbit_set(int j) const {
  if (j == 1) return set("A1");
  if (j == 2) return set("A2");
  return set("empty");
}

DyadicSystem make_system(std::string name, int p, std::vector<PiecewiseTranslation> maps) {
  DyadicSystem sys;
  sys.name = std::move(name);
  sys.p = p;
  sys.maps = std::move(maps);
  for (const auto& m : sys.maps) sys.inverses.push_back(m.inverse());
  sys.sets["X"] = std::make_shared<DyadicSet>(DyadicSet::full());
  sys.sets["empty"] = std::make_shared<DyadicSet>(DyadicSet::empty());
  return sys;
}

DyadicSystem forest_dynamics(int p) {
  if (p < 1) throw UsageError("forest dynamics needs p >= 1");
  // 1^i 0 is B_{i+1}; 0 1^{i-1} 0 tiles [0, 1/2) in blocks of length 2^{-(i+1)}
  Pattern next_block = Pattern::family("", true, 0, "0");
  Pattern lower_half = Pattern::family("0", true, -1, "0");
  std::vector<PiecewiseTranslation> maps;
  maps.emplace_back("h1", std::vector<Piece>{{left_family(), next_block, false}, {right_family(), lower_half, true}});
  maps.emplace_back("h2", std::vector<Piece>{{right_family(), next_block, false}, {left_family(), lower_half, true}});
  for (int j = 3; j <= 2 * p; ++j) maps.push_back(PiecewiseTranslation::identity("h" + std::to_string(j)));
  DyadicSystem sys = make_system("forest(" + std::to_string(p) + ")", p, std::move(maps));
  sys.sets["A1"] = std::make_shared<DyadicSet>("A1", std::vector<Pattern>{left_family()});
  sys.sets["A2"] = std::make_shared<DyadicSet>("A2", std::vector<Pattern>{right_family()});
  return sys;
}

DyadicSystem odometer_system() {
  std::vector<PiecewiseTranslation> maps;
  maps.emplace_back("odometer",
                    std::vector<Piece>{{block_family(), Pattern::family("", false, -1, "1"), false}});
  DyadicSystem sys = make_system("odometer", 0, std::move(maps));
  sys.sets["L"] = std::make_shared<DyadicSet>("L", std::vector<Pattern>{Pattern::cylinder("0")});
  return sys;
}

void apply_letter(const DyadicSystem& sys, Letter l, LazyPoint& x) { sys.letter_map(l).apply(x); }

LazyPoint apply_word(const DyadicSystem& sys, const Word& w, LazyPoint x) {
  for (std::size_t k = w.size(); k-- > 0;) {
    if (w[k].gen >= sys.rank()) throw UsageError("word letter outside the system's generators");
    apply_letter(sys, w[k], x);
  }
  return x;
}

int block_index(const LazyPoint& x) { return static_cast<int>(x.run(0, true)) + 1; }

}  // namespace treelab
