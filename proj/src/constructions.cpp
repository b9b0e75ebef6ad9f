#include "treelab/constructions.hpp"

#include <boost/pending/disjoint_sets.hpp>

namespace treelab {

std::shared_ptr<const WordGroup> surface_group(int p) {
  return std::make_shared<const WordGroup>(presentation_group(surface_presentation(p)));
}

Factor<Word> forest_factor(std::shared_ptr<const SurfaceComplex> complex, std::shared_ptr<const DyadicSystem> sys) {
  return {"forest", std::move(sys), [complex](const Word& h) { return complex->phi_inverse(h); }};
}

DomainConstraint kept_edge_constraint(const SurfaceComplex& complex, const DyadicSystem& sys, int x, int factor) {
  // the owner cell of the crossing sits at phi^-1(h) * owner_offset(x)
  return {factor, {complex.owner_offset(x).inverse(), sys.orbit_set(complex.orbit_of(x)), true}};
}

Graphing<WordGroup> surface_treeing(int p) {
  auto complex = std::make_shared<const SurfaceComplex>(p);
  auto sys = std::make_shared<const DyadicSystem>(forest_dynamics(p));
  Graphing<WordGroup> g;
  g.group = surface_group(p);
  g.factors.push_back(forest_factor(complex, sys));
  g.maps.push_back({"k", "lambda", complex->kappa().inverse(), {}});
  Alphabet basis = complex->basis_alphabet();
  for (int x = 0; x < 2 * p; ++x)
    g.maps.push_back({basis.name(x), "free", Word::letter(x, -1), {kept_edge_constraint(*complex, *sys, x)}});
  return g;
}

WindowGraph SpanningSubgraph::graph() const {
  WindowGraph g;
  g.vertex_count = window->size();
  g.interior = window->ball.interior;
  for (std::size_t i = 0; i < window->ball.edges.size(); ++i) {
    if (!kept[i]) continue;
    const auto& e = window->ball.edges[i];
    g.edges.push_back({e.source, e.target, e.gen});
  }
  return g;
}

SpanningSubgraph pushforward_tree(const ForestConfig& cfg, std::shared_ptr<const CayleyWindow> cw) {
  using Sets = boost::disjoint_sets_with_storage<>;
  const DualWindow& dw = *cfg.window;
  if (cw->pres.kind != PresentationKind::Surface || cw->pres.p != dw.p())
    throw UsageError("pushforward needs a surface window of the forest's genus");
  SpanningSubgraph h;
  h.window = cw;
  const auto& edges = cw->ball.edges;
  h.kept.assign(edges.size(), 1);
  const std::uint64_t ng = cw->pres.generator_count();
  std::unordered_map<std::uint64_t, std::uint32_t> edge_index;
  for (std::uint32_t i = 0; i < edges.size(); ++i) edge_index.emplace(edges[i].source * ng + edges[i].gen, i);
  // primal edge crossed by each dual edge, -1 if outside the window
  std::vector<std::int64_t> crossed(dw.edges.size(), -1);
  for (std::size_t e = 0; e < dw.edges.size(); ++e) {
    const DualEdge& de = dw.edges[e];
    auto s = cw->ball.find(de.primal_source);
    if (!s) continue;
    auto it = edge_index.find(*s * ng + static_cast<std::uint64_t>(dw.complex->generator_of_orbit(de.orbit) + 1));
    crossed[e] = it == edge_index.end() ? -1 : it->second;
  }
  std::vector<std::uint8_t> covered(edges.size(), 0);
  for (std::size_t e = 0; e < dw.edges.size(); ++e) {
    if (crossed[e] < 0) continue;
    covered[crossed[e]] = 1;
    if (cfg.present[e]) h.kept[crossed[e]] = 0;
  }
  if (cfg.sampled) {
    // crossings whose cells leave the dual window, read off the source point
    const SurfaceComplex& complex = *dw.complex;
    DyadicSystem sys = forest_dynamics(dw.p());
    LazyPoint y = sample_point(cfg.seed);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (covered[i] || edges[i].gen == 0) continue;
      int x = static_cast<int>(edges[i].gen) - 1;
      Word owner = complex.phi_inverse(complex.owner_cell(cw->ball.vertices[edges[i].source], x));
      LazyPoint yo = apply_word(sys, owner.inverse(), y);
      if (sys.orbit_set(complex.orbit_of(x))->contains(yo)) h.kept[i] = 0;
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].gen == 0) {
      ++h.kappa_edges;
      h.kappa_kept += h.kept[i];
    } else {
      h.kept_non_kappa += h.kept[i];
    }
    h.removed += !h.kept[i];
  }
  h.treeing = verify_treeing(h.graph());

  // bushes: v's bush is v with everything whose pointer chain reaches v
  const std::size_t n = dw.size();
  std::vector<std::int32_t> next(n, -1);
  std::vector<std::vector<std::uint32_t>> children(n);
  for (std::size_t e = 0; e < dw.edges.size(); ++e) {
    if (!cfg.present[e]) continue;
    const DualEdge& de = dw.edges[e];
    if (cfg.direction[e] & kOwnerToOther) {
      next[de.owner] = static_cast<std::int32_t>(de.other);
      children[de.other].push_back(de.owner);
    }
    if (cfg.direction[e] & kOtherToOwner) {
      next[de.other] = static_cast<std::int32_t>(de.owner);
      children[de.owner].push_back(de.other);
    }
  }
  // bottom-up over the pointer forest from its roots; vertices on pointer
  // cycles are never reached and keep bush_ok = false
  std::vector<std::uint8_t> bush_ok(n, 0), visited(n, 0);
  std::vector<std::uint32_t> stack, post;
  for (std::uint32_t r = 0; r < n; ++r) {
    if (next[r] >= 0) continue;
    stack.push_back(r);
    while (!stack.empty()) {
      std::uint32_t v = stack.back();
      stack.pop_back();
      if (visited[v]) continue;
      visited[v] = 1;
      post.push_back(v);
      for (std::uint32_t c : children[v]) stack.push_back(c);
    }
  }
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    std::uint32_t v = *it;
    bool ok = dw.interior[v] != 0;
    for (std::uint32_t c : children[v]) ok = ok && bush_ok[c];
    bush_ok[v] = ok;
  }
  Sets sets(cw->size());
  for (std::size_t i = 0; i < edges.size(); ++i)
    if (h.kept[i]) sets.union_set(edges[i].source, edges[i].target);
  for (std::size_t e = 0; e < dw.edges.size(); ++e) {
    if (!cfg.present[e] || crossed[e] < 0) continue;
    const DualEdge& de = dw.edges[e];
    std::uint32_t tail = (cfg.direction[e] & kOwnerToOther) ? de.owner : de.other;
    if (!bush_ok[tail]) continue;
    ++h.interior_bush;
    const auto& pe = edges[crossed[e]];
    if (sets.find_set(pe.source) == sets.find_set(pe.target))
      ++h.reconnected;
    else
      h.unreconnected.push_back(static_cast<std::uint32_t>(crossed[e]));
  }
  return h;
}

Graphing<AmalgamGroup> assemble_amalgam_treeing(int n, int p) {
  if (n < 1 || p < 1) throw UsageError("amalgam treeing needs n >= 1 and p >= 1");
  auto complex = std::make_shared<const SurfaceComplex>(p);
  auto sys = std::make_shared<const DyadicSystem>(forest_dynamics(p));
  auto group = std::make_shared<const AmalgamGroup>(n, p, true);
  Graphing<AmalgamGroup> g;
  g.group = group;
  // every homomorphic section sigma_c is split by the projection to F_2p
  Word kappa = complex->kappa();
  g.factors.push_back({"forest", sys, [complex, kappa](const AmalgamNormalForm& x) {
                         Word w;
                         for (const Syllable& s : x.syllables) w *= s.rep;
                         w *= kappa.power(x.power);
                         return complex->phi_inverse(w);
                       }});
  g.maps.push_back({"k", "lambda", group->kappa_power(-1), {}});
  Alphabet basis = complex->basis_alphabet();
  for (int c = 1; c <= n; ++c)
    for (int x = 0; x < 2 * p; ++x)
      g.maps.push_back({basis.name(x) + "_" + std::to_string(c), "copy" + std::to_string(c),
                        group->embed(c, Word::letter(x, -1)), {kept_edge_constraint(*complex, *sys, x)}});
  return g;
}

SplitReport amalgam_split_check(const OrbitWindow<AmalgamGroup>& w, const Graphing<AmalgamGroup>& g, int copy,
                                std::size_t chains, std::uint64_t seed, bool mislabel) {
  const std::string mine = "copy" + std::to_string(copy);
  std::vector<std::uint8_t> r1(g.maps.size()), r2(g.maps.size());
  for (std::size_t k = 0; k < g.maps.size(); ++k) {
    const std::string& t = g.maps[k].tag;
    r1[k] = t == "lambda" || t == mine;
    r2[k] = t == "lambda" || t != mine;
  }
  std::vector<std::uint64_t> key(w.size());
  std::unordered_map<AmalgamNormalForm, std::uint64_t, AmalgamHash> ids;
  for (std::uint32_t v = 0; v < w.size(); ++v) {
    if (mislabel) {
      key[v] = v;
    } else {
      auto [it, fresh] = ids.emplace(g.group->coset_key(w.ball->vertices[v]), ids.size());
      (void)fresh;
      key[v] = it->second;
    }
  }
  return verify_amalgam_split(w.graph, r1, r2, key, chains, seed);
}

Graphing<WordGroup> compose_free_factor(const Graphing<WordGroup>& witness, int p, int r) {
  if (r < 0) throw UsageError("free factor rank must be >= 0");
  const int base = 2 * p;
  const auto& old = *witness.group;
  std::vector<std::string> names;
  for (std::size_t g = 0; g < old.basis().size(); ++g) names.push_back(old.basis().name(static_cast<int>(g)));
  if (static_cast<int>(names.size()) != base) throw UsageError("witness basis does not match p");
  for (int j = 1; j <= r; ++j) names.push_back("c" + std::to_string(j));
  std::vector<Generator<Word>> gens = old.generators();
  for (int j = 1; j <= r; ++j) gens.push_back({Word::letter(base + j - 1), "c" + std::to_string(j), 0});
  Graphing<WordGroup> out;
  out.group = std::make_shared<const WordGroup>(Alphabet(names), std::move(gens));
  for (const auto& f : witness.factors) {
    auto hom = f.hom;
    out.factors.push_back({f.name, f.system, [hom, base](const Word& w) {
                             std::vector<Letter> keep;
                             for (const Letter& l : w.letters())
                               if (l.gen < base) keep.push_back(l);
                             return hom(Word(keep));
                           }});
  }
  std::vector<PiecewiseTranslation> maps;
  for (int j = 0; j < r; ++j) maps.push_back(odometer_system().maps[0]);
  auto extra = std::make_shared<const DyadicSystem>(make_system(r == 0 ? "point" : "odometer", 0, std::move(maps)));
  out.factors.push_back({"extra", extra, [base](const Word& w) {
                           std::vector<Letter> keep;
                           for (const Letter& l : w.letters())
                             if (l.gen >= base) keep.push_back(gen_letter(l.gen - base, l.sign));
                           return Word(keep);
                         }});
  out.maps = witness.maps;
  for (int j = 1; j <= r; ++j) out.maps.push_back({"c" + std::to_string(j), "extra", Word::letter(base + j - 1, -1), {}});
  return out;
}

}  // namespace treelab
