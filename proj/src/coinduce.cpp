#include "treelab/coinduce.hpp"

namespace treelab {

FreeCosetModel::FreeCosetModel(int rank, std::vector<int> b_generators, int twist)
    : rank_(rank), b_gens_(std::move(b_generators)), b_index_(static_cast<std::size_t>(std::max(rank, 0)), -1),
      twist_(twist) {
  if (rank < 1) throw UsageError("free coset model needs rank >= 1");
  for (std::size_t i = 0; i < b_gens_.size(); ++i) {
    int g = b_gens_[i];
    if (g < 0 || g >= rank || b_index_[g] >= 0) throw UsageError("bad subgroup generator " + std::to_string(g));
    b_index_[g] = static_cast<int>(i);
  }
  if (twist_ < 0) throw UsageError("twist must be >= 0");
  if (twist_ > 0 && b_gens_.empty()) throw UsageError("a twisted section needs a subgroup generator");
}

Word FreeCosetModel::key(const Word& a) const {
  std::size_t n = a.size();
  while (n > 0 && b_index_[a[n - 1].gen] >= 0) --n;
  return a.prefix(n);
}

Word FreeCosetModel::section(const Word& h) const {
  if (twist_ == 0) return h;
  return h * Word::letter(b_gens_[0]).power(static_cast<int>(h.size() % static_cast<std::size_t>(twist_)));
}

Word FreeCosetModel::to_b(const Word& a) const {
  std::vector<Letter> out;
  for (const Letter& l : a.letters()) {
    int i = b_index_.at(l.gen);
    if (i < 0) throw Error("element is not in the subgroup");
    out.push_back(gen_letter(i, l.sign));
  }
  return Word(out);
}

AmalgamCosetModel::AmalgamCosetModel(std::shared_ptr<const AmalgamGroup> group, int b_copy)
    : group_(std::move(group)), b_copy_(b_copy) {
  if (b_copy < 1 || b_copy > group_->n()) throw UsageError("subgroup copy out of range");
}

AmalgamNormalForm AmalgamCosetModel::key(Element a) const {
  if (!a.syllables.empty() && a.syllables.back().copy == b_copy_) a.syllables.pop_back();
  a.power = 0;
  return a;
}

Word AmalgamCosetModel::to_b(const Element& a) const {
  if (a.syllables.size() > 1 || (a.syllables.size() == 1 && a.syllables[0].copy != b_copy_))
    throw Error("element is not in the subgroup");
  Word w = a.syllables.empty() ? Word{} : a.syllables[0].rep;
  return w * group_->z(b_copy_).power(a.power);
}

CoinducedAction<FreeCosetModel, DyadicBase> odometer_coinduction(int radius, int twist) {
  WordGroup a = WordGroup::free(Alphabet({"s", "t"}));
  FreeCosetModel model(2, {0}, twist);
  auto ball = build_ball(a, radius);
  auto keys = coset_window(model, ball);
  return {std::move(model), DyadicBase{std::make_shared<const DyadicSystem>(odometer_system())}, std::move(keys)};
}

std::size_t syllable_length(const AmalgamNormalForm& x) {
  std::size_t n = 0;
  for (const Syllable& s : x.syllables) n += s.rep.size();
  return n;
}

CoinducedAction<AmalgamCosetModel, SymbolicBase> amalgam_coinduction(int p, int order, int max_letters) {
  if (max_letters < 0) throw UsageError("window size must be >= 0");
  auto group = std::make_shared<const AmalgamGroup>(
      std::vector<AmalgamFactor>{AmalgamFactor::cyclic(order), AmalgamFactor::surface(p)}, false);
  AmalgamCosetModel model(group, 2);
  auto limit = static_cast<std::size_t>(max_letters);
  return {std::move(model), SymbolicBase{},
          std::function<bool(const AmalgamNormalForm&)>(
              [limit](const AmalgamNormalForm& h) { return syllable_length(h) <= limit; })};
}

}  // namespace treelab
