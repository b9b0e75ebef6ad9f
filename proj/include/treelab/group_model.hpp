#pragma once

#include "treelab/error.hpp"
#include "treelab/word.hpp"

#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace treelab {

inline constexpr std::size_t kDefaultVertexCap = 1'000'000;

template <class E>
struct Generator {
  E element;
  std::string name;
  int label = 0;  // copy index for amalgams, 0 otherwise
};

template <class M>
concept GroupModel = requires(const M& m, const typename M::Element& x) {
  typename M::Hash;
  { m.identity() } -> std::convertible_to<typename M::Element>;
  { m.multiply(x, x) } -> std::convertible_to<typename M::Element>;
  { m.inverse(x) } -> std::convertible_to<typename M::Element>;
  { m.generators() } -> std::convertible_to<const std::vector<Generator<typename M::Element>>&>;
  { m.format(x) } -> std::convertible_to<std::string>;
};

// Free group on a basis with an arbitrary finite generating set.
class WordGroup {
 public:
  using Element = Word;
  using Hash = WordHash;

  WordGroup() = default;
  WordGroup(Alphabet basis, std::vector<Generator<Word>> gens)
      : basis_(std::move(basis)), gens_(std::move(gens)) {}
  // Generators are the basis letters themselves.
  static WordGroup free(const Alphabet& basis);

  Word identity() const { return {}; }
  Word multiply(const Word& a, const Word& b) const { return a * b; }
  Word inverse(const Word& a) const { return a.inverse(); }
  const std::vector<Generator<Word>>& generators() const { return gens_; }
  std::string format(const Word& w) const { return basis_.format(w); }
  const Alphabet& basis() const { return basis_; }

 private:
  Alphabet basis_;
  std::vector<Generator<Word>> gens_;
};

// BFS ball. Steps are indexed 2g (right multiplication by generator g) and
// 2g+1 (by its inverse).
template <class E, class H = std::hash<E>>
struct Ball {
  struct Edge {
    std::uint32_t source;
    std::uint32_t gen;
    std::uint32_t target;  // source * generator
  };

  int radius = 0;
  std::size_t step_count = 0;
  std::vector<E> vertices;
  std::unordered_map<E, std::uint32_t, H> index;
  std::vector<std::uint16_t> depth;
  std::vector<std::int32_t> parent;       // -1 at the root
  std::vector<std::int32_t> parent_step;  // vertex = parent * step
  std::vector<std::int32_t> neighbors;    // [v * step_count + s], -1 if outside
  std::vector<Edge> edges;
  std::vector<std::uint8_t> interior;

  std::size_t size() const { return vertices.size(); }
  std::int32_t neighbor(std::uint32_t v, std::size_t step) const {
    return neighbors[v * step_count + step];
  }
  std::optional<std::uint32_t> find(const E& x) const {
    auto it = index.find(x);
    if (it == index.end()) return std::nullopt;
    return it->second;
  }
};

template <GroupModel M>
using BallOf = Ball<typename M::Element, typename M::Hash>;

template <GroupModel M>
BallOf<M> build_ball(const M& model, int radius, std::size_t cap = kDefaultVertexCap) {
  if (radius < 0) throw UsageError("radius must be >= 0");
  using E = typename M::Element;
  const auto& gens = model.generators();
  std::vector<E> steps;
  for (const auto& g : gens) {
    steps.push_back(g.element);
    steps.push_back(model.inverse(g.element));
  }
  BallOf<M> ball;
  ball.radius = radius;
  ball.step_count = steps.size();
  auto add = [&](E x, int d, std::int32_t par, std::int32_t st) {
    if (ball.vertices.size() >= cap)
      throw SizeError("window exceeds vertex cap of " + std::to_string(cap));
    auto id = static_cast<std::uint32_t>(ball.vertices.size());
    ball.index.emplace(x, id);
    ball.vertices.push_back(std::move(x));
    ball.depth.push_back(static_cast<std::uint16_t>(d));
    ball.parent.push_back(par);
    ball.parent_step.push_back(st);
    return id;
  };
  add(model.identity(), 0, -1, -1);
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    int d = ball.depth[v];
    for (std::size_t s = 0; s < steps.size(); ++s) {
      E y = model.multiply(ball.vertices[v], steps[s]);
      auto it = ball.index.find(y);
      std::int32_t id;
      if (it != ball.index.end()) {
        id = static_cast<std::int32_t>(it->second);
      } else if (d < radius) {
        id = static_cast<std::int32_t>(add(std::move(y), d + 1, static_cast<std::int32_t>(v),
                                           static_cast<std::int32_t>(s)));
      } else {
        id = -1;
      }
      ball.neighbors.push_back(id);
    }
  }
  ball.interior.assign(ball.size(), 1);
  for (std::uint32_t v = 0; v < ball.size(); ++v) {
    for (std::size_t s = 0; s < steps.size(); ++s) {
      std::int32_t t = ball.neighbor(v, s);
      if (t < 0) {
        ball.interior[v] = 0;
      } else if (s % 2 == 0) {
        ball.edges.push_back({v, static_cast<std::uint32_t>(s / 2), static_cast<std::uint32_t>(t)});
      }
    }
  }
  return ball;
}

}  // namespace treelab
