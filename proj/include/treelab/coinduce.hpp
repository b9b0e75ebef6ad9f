#pragma once

#include "treelab/amalgam.hpp"
#include "treelab/events.hpp"
#include "treelab/group_model.hpp"

#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>

namespace treelab {

// Left cosets aB of a subgroup B < A with a section s (s(B) = e). to_b
// writes an element of B as a word in the generators beta acts by.
template <class M>
concept CosetModel = requires(const M& m, const typename M::Element& a, const typename M::Key& h) {
  typename M::Element;
  typename M::Key;
  typename M::KeyHash;
  { m.multiply(a, a) } -> std::convertible_to<typename M::Element>;
  { m.inverse(a) } -> std::convertible_to<typename M::Element>;
  { m.key(a) } -> std::convertible_to<typename M::Key>;
  { m.section(h) } -> std::convertible_to<typename M::Element>;
  { m.to_b(a) } -> std::convertible_to<Word>;
};

// Action of B (through words) on a point space with seeded fresh points.
template <class Y>
concept BaseAction = requires(const Y& y, const Word& b, const typename Y::Point& x) {
  typename Y::Point;
  { y.act(b, x) } -> std::convertible_to<typename Y::Point>;
  { y.fresh(std::uint64_t{}, std::uint64_t{}) } -> std::convertible_to<typename Y::Point>;
};

// F(basis) with B generated by a subset of the basis letters. Keys strip the
// trailing B-letters. twist > 0 switches to the section s(h) = h b_0^(|h| mod twist).
class FreeCosetModel {
 public:
  using Element = Word;
  using Key = Word;
  using KeyHash = WordHash;

  FreeCosetModel(int rank, std::vector<int> b_generators, int twist = 0);

  Word multiply(const Word& a, const Word& b) const { return a * b; }
  Word inverse(const Word& a) const { return a.inverse(); }
  Word key(const Word& a) const;
  Word section(const Word& h) const;
  Word to_b(const Word& a) const;
  int rank() const { return rank_; }
  std::size_t b_rank() const { return b_gens_.size(); }

 private:
  int rank_;
  std::vector<int> b_gens_;
  std::vector<int> b_index_;  // basis letter -> index in b_gens_ or -1
  int twist_;
};

// An amalgam with B = one factor. Keys drop a trailing syllable of that
// factor and the power of z.
class AmalgamCosetModel {
 public:
  using Element = AmalgamNormalForm;
  using Key = AmalgamNormalForm;
  using KeyHash = AmalgamHash;

  AmalgamCosetModel(std::shared_ptr<const AmalgamGroup> group, int b_copy);

  Element multiply(const Element& a, const Element& b) const { return group_->multiply(a, b); }
  Element inverse(const Element& a) const { return group_->inverse(a); }
  Key key(Element a) const;
  Element section(const Key& h) const { return h; }
  Word to_b(const Element& a) const;
  const AmalgamGroup& group() const { return *group_; }
  int b_copy() const { return b_copy_; }

 private:
  std::shared_ptr<const AmalgamGroup> group_;
  int b_copy_;
};

// Dyadic action of B; fresh coordinates are independent uniform points.
struct DyadicBase {
  using Point = LazyPoint;
  std::shared_ptr<const DyadicSystem> system;
  LazyPoint act(const Word& b, const LazyPoint& y) const { return apply_word(*system, b, y); }
  LazyPoint fresh(std::uint64_t seed, std::uint64_t key) const { return sample_point(derive_seed(seed, key)); }
};

// A point of a free B-action given by its orbit and its position g in the
// orbit, read as beta(g^-1) of the orbit's base point.
struct SymbolicPoint {
  std::uint64_t orbit = 0;
  Word g;
  friend bool operator==(const SymbolicPoint&, const SymbolicPoint&) = default;
};

struct SymbolicBase {
  using Point = SymbolicPoint;
  SymbolicPoint act(const Word& b, const SymbolicPoint& y) const { return {y.orbit, y.g * b.inverse()}; }
  SymbolicPoint fresh(std::uint64_t seed, std::uint64_t key) const { return {derive_seed(seed, key), {}}; }
};

// A point f = (f_h) of the product over A/B. Coordinates not listed come
// from the seed (on window cosets only) when there is one.
template <class Key, class KeyHash, class Point>
struct CoinducedPoint {
  std::optional<std::uint64_t> seed;
  std::unordered_map<Key, Point, KeyHash> coords;
};

// beta(word) f_h in set.
template <class Key>
struct CoordinateEvent {
  Key coset;
  Constraint constraint;
};

template <class Key>
using Cylinder = std::vector<CoordinateEvent<Key>>;

template <CosetModel C, BaseAction Y>
class CoinducedAction {
 public:
  using Element = typename C::Element;
  using Key = typename C::Key;
  using KeyHash = typename C::KeyHash;
  using BPoint = typename Y::Point;
  using Point = CoinducedPoint<Key, KeyHash, BPoint>;

  CoinducedAction(C model, Y base, std::vector<Key> window)
      : model_(std::move(model)), base_(std::move(base)), window_list_(std::move(window)) {
    auto set = std::make_shared<std::unordered_set<Key, KeyHash>>(window_list_.begin(), window_list_.end());
    member_ = [set](const Key& h) { return set->count(h) != 0; };
    if (!in_window(model_.key(Element{}))) throw UsageError("coset window must contain B");
  }
  // A window given by membership only; window() is then empty.
  CoinducedAction(C model, Y base, std::function<bool(const Key&)> member)
      : model_(std::move(model)), base_(std::move(base)), member_(std::move(member)) {
    if (!in_window(model_.key(Element{}))) throw UsageError("coset window must contain B");
  }

  const C& model() const { return model_; }
  const Y& base() const { return base_; }
  const std::vector<Key>& window() const { return window_list_; }
  bool in_window(const Key& h) const { return member_(h); }

  Point sample(std::uint64_t seed) const {
    Point f;
    f.seed = seed;
    return f;
  }

  BPoint coordinate(const Point& f, const Key& h) const {
    auto it = f.coords.find(h);
    if (it != f.coords.end()) return it->second;
    if (!f.seed || !in_window(h)) throw WindowError("coordinate outside the coset window");
    return base_.fresh(*f.seed, KeyHash{}(h));
  }

  // h' and b with s(h') b = a^-1 s(h).
  std::pair<Key, Word> transport(const Element& a, const Key& h) const {
    Element x = model_.multiply(model_.inverse(a), model_.section(h));
    Key hp = model_.key(x);
    return {hp, model_.to_b(model_.multiply(model_.inverse(model_.section(hp)), x))};
  }

  // [sigma(a) f]_h = beta(b^-1) f_h' on the given cosets.
  Point act(const Element& a, const Point& f, const std::vector<Key>& keys) const {
    Point out;
    for (const Key& h : keys) {
      auto [hp, b] = transport(a, h);
      out.coords.emplace(h, base_.act(b.inverse(), coordinate(f, hp)));
    }
    return out;
  }

  // The cosets f must be known on for act(a, f, keys).
  std::vector<Key> sources(const Element& a, const std::vector<Key>& keys) const {
    std::vector<Key> out;
    for (const Key& h : keys) out.push_back(transport(a, h).first);
    return out;
  }

  // Psi(1) = f_B.
  BPoint evaluate(const Point& f) const { return coordinate(f, model_.key(Element{})); }

  // {f : sigma(a) f in cyl}.
  Cylinder<Key> pullback(const Element& a, const Cylinder<Key>& cyl) const {
    Cylinder<Key> out;
    for (const auto& ev : cyl) {
      auto [hp, b] = transport(a, ev.coset);
      out.push_back({hp, {ev.constraint.word * b.inverse(), ev.constraint.set, ev.constraint.negate}});
    }
    return out;
  }
  Cylinder<Key> image(const Element& a, const Cylinder<Key>& cyl) const { return pullback(model_.inverse(a), cyl); }

  // {Psi(a_k) in S_k} in the coordinates of this section.
  Cylinder<Key> psi_cylinder(const std::vector<std::pair<Element, std::shared_ptr<const DyadicSet>>>& events) const {
    Cylinder<Key> out;
    for (const auto& [a, set] : events) {
      Key h = model_.key(a);
      Word b = model_.to_b(model_.multiply(model_.inverse(model_.section(h)), a));
      out.push_back({h, {b.inverse(), set, false}});
    }
    return out;
  }

 private:
  C model_;
  Y base_;
  std::vector<Key> window_list_;
  std::function<bool(const Key&)> member_;
};

// Product measure: independent coordinates, each with the base law.
template <class Key, class KeyHash>
MeasureBounds cylinder_measure(const DyadicSystem& sys, const Cylinder<Key>& cyl, int truncation = kDefaultTruncation) {
  std::unordered_map<Key, std::vector<Constraint>, KeyHash> by_coset;
  std::vector<Key> order;
  for (const auto& ev : cyl) {
    auto [it, fresh] = by_coset.try_emplace(ev.coset);
    if (fresh) order.push_back(ev.coset);
    it->second.push_back(ev.constraint);
  }
  MeasureBounds m{Dyadic(1), Dyadic(1)};
  for (const Key& h : order) m = m * event_probability(sys, by_coset[h], truncation);
  return m;
}

// Keys of the cosets met by a ball of A.
template <class C, class E, class H>
std::vector<typename C::Key> coset_window(const C& model, const Ball<E, H>& ball) {
  std::vector<typename C::Key> keys;
  std::unordered_set<typename C::Key, typename C::KeyHash> seen;
  for (const E& a : ball.vertices) {
    auto h = model.key(a);
    if (seen.insert(h).second) keys.push_back(h);
  }
  return keys;
}

// F(s, t) over <s> with the binary odometer, on the cosets of the radius-r
// ball of F(s, t).
CoinducedAction<FreeCosetModel, DyadicBase> odometer_coinduction(int radius, int twist = 0);

// A1 = G *_{H} F_2p with G = <c>, H = <c^order> glued to <k>, co-induced
// from the symbolic free action of F_2p. The window holds the cosets whose
// key has at most max_letters letters.
CoinducedAction<AmalgamCosetModel, SymbolicBase> amalgam_coinduction(int p, int order, int max_letters);

// Letters of a normal form, the power of z not counted.
std::size_t syllable_length(const AmalgamNormalForm& x);

}  // namespace treelab
