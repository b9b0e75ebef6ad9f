#include "treelab/amalgam.hpp"

namespace treelab {

std::size_t AmalgamNormalForm::hash() const {
  std::size_t h = static_cast<std::size_t>(power) * 0x9E3779B97F4A7C15ULL;
  for (const Syllable& s : syllables) h = (h ^ (s.rep.hash() + s.copy)) * 1099511628211ULL;
  return h;
}

namespace {

std::vector<AmalgamFactor> surface_copies(int n, int p) {
  return std::vector<AmalgamFactor>(static_cast<std::size_t>(std::max(n, 0)), AmalgamFactor::surface(p));
}

}  // namespace

AmalgamGroup::AmalgamGroup(int n, int p, bool include_kappa) : AmalgamGroup(surface_copies(n, p), include_kappa) {
  pres_ = amalgam_presentation(n, p);
}

AmalgamGroup::AmalgamGroup(std::vector<AmalgamFactor> factors, bool include_kappa)
    : n_(static_cast<int>(factors.size())), p_(0), factors_(std::move(factors)) {
  if (factors_.empty()) throw UsageError("amalgam needs at least one factor");
  z_.emplace_back();
  alphabets_.emplace_back();
  for (const AmalgamFactor& f : factors_) {
    if (f.kind == AmalgamFactor::Kind::Surface) {
      if (f.p < 1) throw UsageError("surface factor needs p >= 1");
      if (p_ == 0) p_ = f.p;
      z_.push_back(kappa_word(f.p));
      alphabets_.push_back(Alphabet::free_basis(f.p));
    } else {
      if (f.order < 1) throw UsageError("cyclic factor needs a positive order");
      z_.push_back(Word::letter(0).power(f.order));
      alphabets_.push_back(Alphabet({"c"}));
    }
  }
  if (include_kappa) gens_.push_back({kappa_power(1), factors_[0].kind == AmalgamFactor::Kind::Surface ? "k" : "z", 0});
  for (int c = 1; c <= n_; ++c) {
    const Alphabet& al = alphabets_[c];
    for (int g = 0; g < static_cast<int>(al.size()); ++g)
      gens_.push_back({embed(c, Word::letter(g)),
                       factors_[c - 1].kind == AmalgamFactor::Kind::Surface ? al.name(g) + "_" + std::to_string(c)
                                                                          : al.name(g),
                       c});
  }
}

std::pair<Word, int> AmalgamGroup::split_coset(int copy, const Word& u) const {
  const AmalgamFactor& f = factors_.at(copy - 1);
  if (f.kind == AmalgamFactor::Kind::Cyclic) {
    int j = 0;
    for (const Letter& l : u.letters()) j += l.sign;
    int m = j >= 0 ? j / f.order : -((-j + f.order - 1) / f.order);
    return {Word::letter(0).power(j - m * f.order), m};
  }
  const Word& kappa = z_[copy];
  const int bound = static_cast<int>((3 * u.size()) / (4 * f.p)) + 2;
  Word best;
  int best_m = 0;
  bool have = false;
  Word kinv = kappa.inverse();
  // u k^-m for m = 0, 1, ... and m = -1, -2, ...
  Word cur = u;
  for (int m = 0; m <= bound; ++m) {
    if (!have || cur < best) {
      best = cur;
      best_m = m;
      have = true;
    }
    cur *= kinv;
  }
  cur = u * kappa;
  for (int m = -1; m >= -bound; --m) {
    if (cur < best) {
      best = cur;
      best_m = m;
    }
    cur *= kappa;
  }
  return {best, best_m};
}

AmalgamNormalForm AmalgamGroup::kappa_power(int m) const {
  AmalgamNormalForm x;
  x.power = m;
  return x;
}

AmalgamNormalForm AmalgamGroup::multiply_word(Element x, int copy, const Word& w) const {
  if (copy < 1 || copy > n_) throw UsageError("copy index out of range");
  if (w.empty()) return x;
  Word u;
  bool merge = !x.syllables.empty() && x.syllables.back().copy == copy;
  if (merge) {
    u = x.syllables.back().rep * z_[copy].power(x.power) * w;
    x.syllables.pop_back();
  } else {
    u = z_[copy].power(x.power) * w;
  }
  auto [rep, m] = split_coset(copy, u);
  x.power = m;
  if (!rep.empty()) x.syllables.push_back({static_cast<std::uint16_t>(copy), std::move(rep)});
  return x;
}

AmalgamNormalForm AmalgamGroup::multiply(const Element& a, const Element& b) const {
  Element x = a;
  for (const Syllable& s : b.syllables) x = multiply_word(std::move(x), s.copy, s.rep);
  if (b.power) {
    int c = x.syllables.empty() ? 1 : x.syllables.back().copy;
    x = multiply_word(std::move(x), c, z_[c].power(b.power));
  }
  return x;
}

AmalgamNormalForm AmalgamGroup::inverse(const Element& a) const {
  Element x;
  int last = a.syllables.empty() ? 1 : a.syllables.back().copy;
  x = multiply_word(std::move(x), last, z_[last].power(-a.power));
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it)
    x = multiply_word(std::move(x), it->copy, it->rep.inverse());
  return x;
}

std::string AmalgamGroup::format(const Element& x) const {
  if (x.is_identity()) return "e";
  std::string out;
  for (const Syllable& s : x.syllables) {
    if (!out.empty()) out += ' ';
    out += std::to_string(s.copy) + ":" + alphabets_[s.copy].format(s.rep);
  }
  if (x.power) {
    if (!out.empty()) out += ' ';
    out += (factors_[0].kind == AmalgamFactor::Kind::Surface ? "k^" : "z^") + std::to_string(x.power);
  }
  return out;
}

AmalgamNormalForm amalgam_normal_form(std::span<const Letter> raw, int n, int p) {
  if (n < 1 || p < 1) throw UsageError("amalgam needs n >= 1 and p >= 1");
  AmalgamGroup group(n, p);
  const int r = 2 * p;
  AmalgamNormalForm x;
  for (const Letter& l : raw) {
    if (l.gen > n * r || (l.sign != 1 && l.sign != -1))
      throw UsageError("malformed amalgam letter " + std::to_string(l.gen));
    if (l.gen == 0) {
      int copy = x.syllables.empty() ? 1 : x.syllables.back().copy;
      x = group.multiply_word(std::move(x), copy, l.sign > 0 ? group.kappa() : group.kappa().inverse());
    } else {
      int copy = (l.gen - 1) / r + 1;
      x = group.multiply_word(std::move(x), copy, Word::letter((l.gen - 1) % r, l.sign));
    }
  }
  return x;
}

AmalgamWindow amalgam_window(int n, int p, int radius, std::size_t cap) {
  AmalgamWindow w{AmalgamGroup(n, p), {}};
  w.ball = build_ball(w.group, radius, cap);
  return w;
}

}  // namespace treelab
