#include "treelab/pairs.hpp"

#include <boost/pending/disjoint_sets.hpp>

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>
#include <set>
#include <random>

namespace treelab {

namespace {

using Sets = boost::disjoint_sets_with_storage<>;

// classes of a on `verts` under one DSU equal those under the other
bool same_partition(Sets& a, Sets& b, const std::vector<std::uint32_t>& verts) {
  std::unordered_map<std::size_t, std::size_t> ab, ba;
  for (std::uint32_t v : verts) {
    std::size_t x = a.find_set(v), y = b.find_set(v);
    auto [i, fi] = ab.emplace(x, y);
    auto [j, fj] = ba.emplace(y, x);
    if (i->second != y || j->second != x) return false;
  }
  return true;
}

struct MapRoles {
  int lambda = -1;
  std::vector<int> free, fixed;
};

MapRoles map_roles(const Graphing<WordGroup>& g) {
  MapRoles r;
  for (std::size_t k = 0; k < g.maps.size(); ++k) {
    const auto& m = g.maps[k];
    if (m.tag == "lambda") {
      if (r.lambda >= 0 || !m.domain.empty()) throw UsageError("packing needs one total lambda map");
      r.lambda = static_cast<int>(k);
    } else if (m.tag == "free") {
      r.free.push_back(static_cast<int>(k));
    } else {
      if (!m.domain.empty()) throw UsageError("map " + m.label + " is neither free nor total");
      r.fixed.push_back(static_cast<int>(k));
    }
  }
  if (r.lambda < 0) throw UsageError("packing needs a lambda map");
  return r;
}

class Labeller {
 public:
  Labeller(const Graphing<WordGroup>& g, const std::vector<LazyPoint>& base) : g_(g), base_(base) {}

  std::vector<LazyPoint> at(const Word& h) const {
    std::vector<LazyPoint> out;
    for (std::size_t f = 0; f < g_.factors.size(); ++f)
      out.push_back(apply_word(*g_.factors[f].system, g_.factors[f].hom(h).inverse(), base_[f]));
    return out;
  }
  // labels of h w from those of h
  std::vector<LazyPoint> step(const std::vector<LazyPoint>& lab, const Word& w) const {
    auto it = images_.find(w);
    if (it == images_.end()) {
      std::vector<Word> img;
      for (const auto& f : g_.factors) img.push_back(f.hom(w).inverse());
      it = images_.emplace(w, std::move(img)).first;
    }
    std::vector<LazyPoint> out;
    for (std::size_t f = 0; f < g_.factors.size(); ++f)
      out.push_back(apply_word(*g_.factors[f].system, it->second[f], lab[f]));
    return out;
  }
  bool in(int k, const std::vector<LazyPoint>& lab) const {
    std::vector<const LazyPoint*> ptr;
    for (const auto& y : lab) ptr.push_back(&y);
    return in_domain(g_.factors, g_.maps[k], ptr);
  }

 private:
  const Graphing<WordGroup>& g_;
  const std::vector<LazyPoint>& base_;
  mutable std::unordered_map<Word, std::vector<Word>, WordHash> images_;
};

}  // namespace

std::pair<Word, int> split_cyclic_coset(const Word& u, const Word& z) {
  if (z.empty()) throw UsageError("empty cyclic generator");
  const int bound = static_cast<int>((2 * u.size()) / z.size()) + 1;
  Word best = u, cur = u;
  int best_m = 0;
  Word zi = z.inverse();
  for (int m = 1; m <= bound; ++m) {
    cur *= zi;
    if (cur < best) {
      best = cur;
      best_m = m;
    }
  }
  cur = u;
  for (int m = -1; m >= -bound; --m) {
    cur *= z;
    if (cur < best) {
      best = cur;
      best_m = m;
    }
  }
  return {best, best_m};
}

std::optional<std::uint32_t> Packing::find(const Word& h) const {
  auto it = index.find(h);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

std::int32_t Packing::kappa_step(std::uint32_t v, int sign) const {
  const Line& l = lines[line_of[v]];
  int m = position[v] + sign;
  if (m < l.lo || m > l.hi) return -1;
  return static_cast<std::int32_t>(v) + sign;
}

std::size_t Packing::packed_edges() const {
  std::size_t n = 0;
  for (const auto& col : psi)
    for (std::int32_t t : col) n += t >= 0;
  return n;
}

Packing pack_treeing(const Graphing<WordGroup>& g, const std::vector<LazyPoint>& base, const BallOf<WordGroup>& window,
                     PackingParams params) {
  if (base.size() != g.factors.size()) throw UsageError("one base point per factor");
  if (params.margin < 0 || params.displacement < 0) throw UsageError("packing parameters must be >= 0");
  MapRoles roles = map_roles(g);
  Packing pk;
  pk.kappa = g.maps[roles.lambda].mover.inverse();
  {
    MeasureBounds c{Dyadic(0), Dyadic(0)};
    for (int k : roles.free) c = c + domain_bounds(g.factors, g.maps[k]);
    pk.colors = static_cast<std::size_t>(std::llround((c.lower.to_double() + c.upper.to_double()) / 2));
  }
  for (int k : roles.fixed) pk.fixed_labels.push_back(g.maps[k].label);
  const Labeller lab(g, base);
  const int M = params.margin, D = params.displacement;
  const std::size_t types = 2 * pk.colors;

  struct LineWork {
    Word rep;
    bool core = false;
    int wlo = INT_MAX, whi = INT_MIN;
    std::vector<std::uint32_t> edges;
    int lo = INT_MAX, hi = INT_MIN;
    std::vector<std::map<int, std::uint32_t>> slots;  // [type] position -> edge
  };
  std::vector<LineWork> lines;
  std::unordered_map<Word, std::uint32_t, WordHash> line_id;
  auto locate = [&](const Word& h) {
    auto [rep, m] = split_cyclic_coset(h, pk.kappa);
    auto [it, fresh] = line_id.emplace(rep, static_cast<std::uint32_t>(lines.size()));
    if (fresh) {
      lines.emplace_back();
      lines.back().rep = rep;
      lines.back().slots.resize(types);
    }
    return std::pair<std::uint32_t, int>{it->second, m};
  };

  std::vector<std::pair<std::uint32_t, int>> ball_pos(window.size());
  for (std::uint32_t v = 0; v < window.size(); ++v) {
    auto lp = locate(window.vertices[v]);
    ball_pos[v] = lp;
    LineWork& l = lines[lp.first];
    l.core = true;
    l.wlo = std::min(l.wlo, lp.second);
    l.whi = std::max(l.whi, lp.second);
  }
  const std::size_t core_lines = lines.size();

  struct TreeEdge {
    Word src, tgt;
    int map;
    std::uint32_t line[2];
    int pos[2];
    int color = -1;
    int out_side = -1;
    int slot[2] = {INT_MIN, INT_MIN};
    bool bad = false;
    bool loop = false;
  };
  std::vector<TreeEdge> edges;
  std::vector<std::unordered_map<Word, std::uint32_t, WordHash>> edge_index(g.maps.size());
  struct Fixed {
    Word src, tgt;
    int map;
  };
  std::vector<Fixed> fixed;
  auto add_edge = [&](const Word& src, int k, const Word& tgt) {
    auto [it, fresh] = edge_index[k].emplace(src, static_cast<std::uint32_t>(edges.size()));
    if (!fresh) return;
    TreeEdge e;
    e.src = src;
    e.tgt = tgt;
    e.map = k;
    auto a = locate(src), b = locate(tgt);
    e.line[0] = a.first;
    e.pos[0] = a.second;
    e.line[1] = b.first;
    e.pos[1] = b.second;
    e.loop = a.first == b.first;
    lines[a.first].edges.push_back(it->second);
    if (!e.loop) lines[b.first].edges.push_back(it->second);
    edges.push_back(std::move(e));
  };
  auto add_fixed = [&](const Word& src, int k, const Word& tgt) {
    auto [it, fresh] = edge_index[k].emplace(src, static_cast<std::uint32_t>(fixed.size()));
    if (fresh) fixed.push_back({src, tgt, k});
  };

  std::vector<Word> mover_inv(g.maps.size());
  for (std::size_t k = 0; k < g.maps.size(); ++k) mover_inv[k] = g.maps[k].mover.inverse();
  for (std::uint32_t L = 0; L < core_lines; ++L) {
    const int seg_lo = lines[L].wlo - M, seg_hi = lines[L].whi + M;
    Word h = lines[L].rep * pk.kappa.power(seg_lo);
    std::vector<LazyPoint> y = lab.at(h);
    for (int m = seg_lo; m <= seg_hi; ++m) {
      for (int k : roles.free) {
        if (lab.in(k, y)) add_edge(h, k, h * mover_inv[k]);
        Word t = h * g.maps[k].mover;
        if (lab.in(k, lab.step(y, g.maps[k].mover))) add_edge(t, k, h);
      }
      for (int k : roles.fixed) {
        add_fixed(h, k, h * mover_inv[k]);
        add_fixed(h * g.maps[k].mover, k, h);
      }
      h *= pk.kappa;
      y = lab.step(y, pk.kappa);
    }
    lines[L].lo = seg_lo;
    lines[L].hi = seg_hi;
  }

  // slots: core lines fill their segment in order, the type of an edge is
  // fixed by whichever end is placed first
  auto place = [&](std::uint32_t L, std::uint32_t ei, int side, int slot, std::size_t type) {
    TreeEdge& e = edges[ei];
    int shift = std::abs(slot - e.pos[side]);
    pk.max_displacement = std::max(pk.max_displacement, shift);
    if (shift > D) {
      e.bad = true;
      ++pk.displaced;
    }
    e.slot[side] = slot;
    lines[L].slots[type].emplace(slot, ei);
  };
  auto side_on = [&](const TreeEdge& e, std::uint32_t L) { return e.line[0] == L ? 0 : 1; };
  auto sorted_edges = [&](std::uint32_t L) {
    std::vector<std::uint32_t> es;
    for (std::uint32_t ei : lines[L].edges)
      if (!edges[ei].loop) es.push_back(ei);
    std::sort(es.begin(), es.end(), [&](std::uint32_t a, std::uint32_t b) {
      int pa = edges[a].pos[side_on(edges[a], L)], pb = edges[b].pos[side_on(edges[b], L)];
      return pa != pb ? pa < pb : a < b;
    });
    return es;
  };
  if (types > 0) {
    for (std::uint32_t L = 0; L < core_lines; ++L) {
      std::vector<int> next(types, lines[L].lo);
      for (std::uint32_t ei : sorted_edges(L)) {
        TreeEdge& e = edges[ei];
        int side = side_on(e, L);
        std::size_t type;
        if (e.color >= 0) {
          type = 2 * static_cast<std::size_t>(e.color) + (e.out_side == side ? 0 : 1);
        } else {
          type = static_cast<std::size_t>(std::min_element(next.begin(), next.end()) - next.begin());
          e.color = static_cast<int>(type / 2);
          e.out_side = type % 2 == 0 ? side : 1 - side;
        }
        int slot = std::max(next[type], e.pos[side] - D);
        next[type] = slot + 1;
        place(L, ei, side, slot, type);
      }
    }
    for (std::uint32_t L = static_cast<std::uint32_t>(core_lines); L < lines.size(); ++L) {
      std::vector<int> next(types, INT_MIN);
      for (std::uint32_t ei : sorted_edges(L)) {
        TreeEdge& e = edges[ei];
        int side = side_on(e, L);
        std::size_t type = 2 * static_cast<std::size_t>(e.color) + (e.out_side == side ? 0 : 1);
        int slot = std::max(next[type], e.pos[side]);
        next[type] = slot + 1;
        place(L, ei, side, slot, type);
      }
    }
  }
  for (std::uint32_t v = 0; v < window.size(); ++v) {
    const LineWork& l = lines[ball_pos[v].first];
    for (std::size_t t = 0; t < types; ++t) pk.missing_slots += l.slots[t].count(ball_pos[v].second) == 0;
  }

  // region: every position an edge end or slot uses, plus the core segments
  for (const TreeEdge& e : edges)
    for (int s = 0; s < 2; ++s) {
      LineWork& l = lines[e.line[s]];
      l.lo = std::min({l.lo, e.pos[s], e.slot[s] == INT_MIN ? e.pos[s] : e.slot[s]});
      l.hi = std::max({l.hi, e.pos[s], e.slot[s] == INT_MIN ? e.pos[s] : e.slot[s]});
    }
  for (std::uint32_t L = 0; L < lines.size(); ++L) {
    LineWork& l = lines[L];
    if (l.lo > l.hi) continue;
    pk.lines.push_back({l.rep, l.core, l.lo, l.hi});
    Word h = l.rep * pk.kappa.power(l.lo);
    for (int m = l.lo; m <= l.hi; ++m) {
      pk.index.emplace(h, static_cast<std::uint32_t>(pk.vertices.size()));
      pk.vertices.push_back(h);
      pk.line_of.push_back(static_cast<std::uint32_t>(pk.lines.size() - 1));
      pk.position.push_back(m);
      h *= pk.kappa;
    }
  }
  pk.core.assign(pk.vertices.size(), 0);
  for (const Word& h : window.vertices) pk.core[pk.index.at(h)] = 1;
  std::vector<std::uint32_t> first(lines.size(), 0);
  {
    std::size_t i = 0;
    for (std::uint32_t L = 0; L < lines.size(); ++L) {
      if (lines[L].lo > lines[L].hi) continue;
      first[L] = static_cast<std::uint32_t>(pk.index.at(pk.lines[i].rep * pk.kappa.power(pk.lines[i].lo)));
      ++i;
    }
  }
  auto vertex_at = [&](std::uint32_t L, int m) { return first[L] + static_cast<std::uint32_t>(m - lines[L].lo); };
  pk.psi.assign(pk.colors, std::vector<std::int32_t>(pk.vertices.size(), -1));
  pk.psi_inv = pk.psi;
  for (const TreeEdge& e : edges) {
    if (e.loop) ++pk.loops;
    pk.tree_edges.push_back({pk.index.at(e.src), pk.index.at(e.tgt), static_cast<std::uint32_t>(e.map)});
    if (e.loop || e.bad || e.color < 0) continue;
    int o = e.out_side;
    std::uint32_t s = vertex_at(e.line[o], e.slot[o]), t = vertex_at(e.line[1 - o], e.slot[1 - o]);
    pk.psi[e.color][s] = static_cast<std::int32_t>(t);
    pk.psi_inv[e.color][t] = static_cast<std::int32_t>(s);
  }
  for (const Fixed& f : fixed) {
    auto s = pk.find(f.src), t = pk.find(f.tgt);
    if (!s || !t) continue;
    std::uint32_t k = static_cast<std::uint32_t>(std::find(roles.fixed.begin(), roles.fixed.end(), f.map) - roles.fixed.begin());
    pk.fixed_edges.push_back({*s, *t, k});
  }
  return pk;
}

std::size_t PairWitness::count(Verdict v) const {
  std::size_t n = 0;
  for (const auto& w : windows) n += w.verdict == v;
  return n;
}

double PairWitness::inconclusive_fraction() const {
  return windows.empty() ? 0.0 : static_cast<double>(count(Verdict::Inconclusive)) / static_cast<double>(windows.size());
}

std::map<std::string, std::size_t> PairWitness::totals() const {
  std::map<std::string, std::size_t> t;
  for (const auto& w : windows)
    for (const auto& [k, v] : w.counts) {
      if (k == "max_displacement")
        t[k] = std::max(t[k], v);
      else
        t[k] += v;
    }
  return t;
}

PairWindowReport check_packing(const Graphing<WordGroup>& g, const Packing& pk, const std::vector<LazyPoint>& base,
                               std::uint64_t seed, int word_length, std::size_t freeness_points) {
  PairWindowReport rep;
  rep.seed = seed;
  auto& c = rep.counts;
  const std::size_t n = pk.vertices.size();
  c["vertices"] = n;
  c["lines"] = pk.lines.size();
  c["tree_edges"] = pk.tree_edges.size();
  c["packed_edges"] = pk.packed_edges();
  c["fixed_edges"] = pk.fixed_edges.size();
  c["displaced"] = pk.displaced;
  c["max_displacement"] = static_cast<std::size_t>(pk.max_displacement);
  c["missing_slots"] = pk.missing_slots;
  c["loops"] = pk.loops;
  std::vector<std::uint32_t> core;
  for (std::uint32_t v = 0; v < n; ++v)
    if (pk.core[v]) core.push_back(v);

  // the same k map on both sides
  MapRoles roles = map_roles(g);
  const Labeller lab(g, base);
  std::size_t z_bad = 0;
  for (std::uint32_t v : core) {
    const Word& h = pk.vertices[v];
    std::int32_t t = pk.kappa_step(v, 1);
    Word image = h * g.maps[roles.lambda].mover.inverse();
    if (t < 0 || !(pk.vertices[t] == image) || !lab.in(roles.lambda, lab.at(h))) ++z_bad;
  }
  c["z_mismatches"] = z_bad;

  Sets zt(n), tt(n), tp(n), zp(n);
  for (std::uint32_t v = 0; v < n; ++v) {
    std::int32_t t = pk.kappa_step(v, 1);
    if (t < 0) continue;
    for (Sets* s : {&zt, &tt, &tp, &zp}) s->union_set(v, static_cast<std::uint32_t>(t));
  }
  for (const auto& e : pk.tree_edges) tt.union_set(e.source, e.target);
  for (const auto& col : pk.psi)
    for (std::uint32_t v = 0; v < n; ++v)
      if (col[v] >= 0) tp.union_set(v, static_cast<std::uint32_t>(col[v]));
  for (const auto& e : pk.fixed_edges) {
    tt.union_set(e.source, e.target);
    tp.union_set(e.source, e.target);
  }
  bool orbits = same_partition(tt, tp, core);
  bool sub = same_partition(zt, zp, core);
  c["orbit_mismatch"] = !orbits;
  c["subgroup_orbit_mismatch"] = !sub;

  // psi and fixed edges between lines form a forest with no repeated pair
  std::size_t line_cycles = 0;
  {
    Sets ls(pk.lines.size());
    auto join = [&](std::uint32_t a, std::uint32_t b) {
      auto x = ls.find_set(pk.line_of[a]), y = ls.find_set(pk.line_of[b]);
      if (x == y)
        ++line_cycles;
      else
        ls.link(x, y);
    };
    for (const auto& col : pk.psi)
      for (std::uint32_t v = 0; v < n; ++v)
        if (col[v] >= 0) join(v, static_cast<std::uint32_t>(col[v]));
    for (const auto& e : pk.fixed_edges) join(e.source, e.target);
  }
  c["line_cycles"] = line_cycles;

  // freeness on reduced words in k, psi_j and the fixed maps
  std::vector<std::vector<std::int32_t>> fwd(pk.fixed_labels.size(), std::vector<std::int32_t>(n, -1)), bwd = fwd;
  for (const auto& e : pk.fixed_edges) {
    fwd[e.map][e.source] = static_cast<std::int32_t>(e.target);
    bwd[e.map][e.target] = static_cast<std::int32_t>(e.source);
  }
  const std::size_t gens = 1 + pk.colors + pk.fixed_labels.size();
  auto apply = [&](std::uint32_t v, std::size_t letter) -> std::int32_t {
    std::size_t gi = letter / 2;
    bool inv = letter % 2;
    if (gi == 0) return pk.kappa_step(v, inv ? -1 : 1);
    if (gi <= pk.colors) return (inv ? pk.psi_inv : pk.psi)[gi - 1][v];
    return (inv ? bwd : fwd)[gi - 1 - pk.colors][v];
  };
  std::size_t checked = 0, skipped = 0, stabilizers = 0;
  std::vector<std::uint32_t> starts;
  if (auto e = pk.find(Word{})) starts.push_back(*e);
  std::mt19937_64 rng(derive_seed(seed, 0xF4EE));
  while (starts.size() < std::min(freeness_points, core.size())) starts.push_back(core[rng() % core.size()]);
  for (std::uint32_t s : starts) {
    // depth-first over reduced words
    struct Frame {
      std::uint32_t v;
      std::size_t last;  // letter used to get here, SIZE_MAX at the root
      std::size_t next;
      int depth;
    };
    std::vector<Frame> stack{{s, SIZE_MAX, 0, 0}};
    while (!stack.empty()) {
      Frame& f = stack.back();
      if (f.depth == word_length || f.next == 2 * gens) {
        stack.pop_back();
        continue;
      }
      std::size_t l = f.next++;
      if (f.last != SIZE_MAX && l == (f.last ^ 1)) continue;
      std::int32_t t = apply(f.v, l);
      if (t < 0) {
        ++skipped;
        continue;
      }
      ++checked;
      if (static_cast<std::uint32_t>(t) == s) ++stabilizers;
      stack.push_back({static_cast<std::uint32_t>(t), l, 0, f.depth + 1});
    }
  }
  c["words_checked"] = checked;
  c["words_skipped"] = skipped;
  c["stabilizers"] = stabilizers;

  if (pk.loops || line_cycles || stabilizers || z_bad || !sub) {
    rep.verdict = Verdict::Fail;
    rep.reason = pk.loops ? "treeing edge inside a k-line"
                 : line_cycles ? "psi edges close a cycle of lines"
                 : stabilizers ? "a reduced word fixes a window vertex"
                 : z_bad ? "the k maps differ"
                         : "subgroup orbits differ";
  } else if (!pk.complete()) {
    rep.verdict = Verdict::Inconclusive;
    rep.reason = pk.displaced ? "edge end displaced too far" : "window vertex with an empty slot";
  } else if (!orbits) {
    rep.verdict = Verdict::Fail;
    rep.reason = "orbit partitions differ";
  }
  return rep;
}

PairWitness pair_witness_window(PairKind kind, int p, int r, int radius, const std::vector<std::uint64_t>& seeds,
                                PackingParams params, int word_length, std::size_t freeness_points) {
  if (p < 1) throw UsageError("pair witness needs p >= 1");
  if (radius < 0) throw UsageError("radius must be >= 0");
  PairWitness pw;
  pw.kind = kind == PairKind::Surface ? "surface" : "boundary";
  pw.p = p;
  pw.r = kind == PairKind::Surface ? 0 : r;
  pw.radius = radius;
  Graphing<WordGroup> g = surface_treeing(p);
  if (kind == PairKind::Boundary) g = compose_free_factor(g, p, r);
  std::string extra = pw.r > 0 ? " * F_" + std::to_string(pw.r) : "";
  pw.left = "<k> < F_" + std::to_string(2 * p) + extra;
  pw.right = "Z < Z * F_" + std::to_string(2 * p - 1) + extra;
  for (const auto& m : g.maps)
    if (m.tag == "free") pw.packed_cost = pw.packed_cost + domain_bounds(g.factors, m);
  auto ball = build_ball(*g.group, radius);
  for (std::uint64_t seed : seeds) {
    std::vector<LazyPoint> base;
    for (std::size_t f = 0; f < g.factors.size(); ++f) base.push_back(factor_base_point(seed, f));
    Packing pk = pack_treeing(g, base, ball, params);
    pw.colors = pk.colors;
    pw.windows.push_back(check_packing(g, pk, base, seed, word_length, freeness_points));
  }
  return pw;
}

namespace {

// Y-orbits of the symbolic F_2p action, each packed around its base vertex.
// An orbit keeps one packing per window; grow() repacks it on a larger ball.
class OrbitPackings {
 public:
  OrbitPackings(const Graphing<WordGroup>& g, int radius, PackingParams params)
      : g_(g), radius_(radius), params_(params) {}

  const Packing& at(std::uint64_t orbit) {
    auto it = cache_.find(orbit);
    if (it != cache_.end()) return it->second;
    auto r = radius_of_.find(orbit);
    int radius = r == radius_of_.end() ? radius_ : r->second;
    std::vector<LazyPoint> base{factor_base_point(orbit, 0)};
    return cache_.emplace(orbit, pack_treeing(g_, base, ball(radius), params_)).first->second;
  }
  int radius(std::uint64_t orbit) const {
    auto r = radius_of_.find(orbit);
    return r == radius_of_.end() ? radius_ : r->second;
  }
  void grow(std::uint64_t orbit) {
    radius_of_[orbit] = radius(orbit) + 1;
    cache_.erase(orbit);
  }
  std::size_t size() const { return cache_.size(); }

 private:
  const BallOf<WordGroup>& ball(int r) {
    auto it = balls_.find(r);
    if (it == balls_.end()) it = balls_.emplace(r, build_ball(*g_.group, r)).first;
    return it->second;
  }
  const Graphing<WordGroup>& g_;
  int radius_;
  PackingParams params_;
  std::map<int, BallOf<WordGroup>> balls_;
  std::unordered_map<std::uint64_t, int> radius_of_;
  std::unordered_map<std::uint64_t, Packing> cache_;
};

// shortest path in the packed graph (k and psi steps): vertices and, per
// step, the generator used (0 for k, 1 + colour for psi) and its sign
std::optional<std::vector<std::uint32_t>> packed_path(const Packing& pk, std::uint32_t a, std::uint32_t b) {
  const std::size_t n = pk.vertices.size();
  std::vector<std::int32_t> prev(n, -1);
  std::deque<std::uint32_t> q{a};
  prev[a] = static_cast<std::int32_t>(a);
  while (!q.empty()) {
    std::uint32_t u = q.front();
    q.pop_front();
    if (u == b) break;
    auto visit = [&](std::int32_t t) {
      if (t < 0 || prev[t] >= 0) return;
      prev[t] = static_cast<std::int32_t>(u);
      q.push_back(static_cast<std::uint32_t>(t));
    };
    visit(pk.kappa_step(u, 1));
    visit(pk.kappa_step(u, -1));
    for (std::size_t j = 0; j < pk.colors; ++j) {
      visit(pk.psi[j][u]);
      visit(pk.psi_inv[j][u]);
    }
  }
  if (prev[b] < 0) return std::nullopt;
  std::vector<std::uint32_t> path{b};
  while (path.back() != a) path.push_back(static_cast<std::uint32_t>(prev[path.back()]));
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

PairWitness amalgam_coind_pair(int p, const std::vector<std::uint64_t>& seeds, const AmalgamPairParams& prm) {
  if (p < 1) throw UsageError("pair witness needs p >= 1");
  if (prm.order < 1) throw UsageError("order must be >= 1");
  PairWitness pw;
  pw.kind = "amalgam-coind";
  pw.p = p;
  pw.radius = prm.points_radius;
  const std::string c = prm.order == 1 ? "c" : "c^" + std::to_string(prm.order);
  pw.left = "Z < Z *_{" + c + " = k} F_" + std::to_string(2 * p);
  pw.right = "Z < Z * F_" + std::to_string(2 * p - 1);

  auto act = amalgam_coinduction(p, prm.order, prm.window_letters);
  using Act = decltype(act);
  using El = AmalgamNormalForm;
  const AmalgamCosetModel& model = act.model();
  const AmalgamGroup& A = model.group();
  Graphing<WordGroup> g = surface_treeing(p);
  for (const auto& m : g.maps)
    if (m.tag == "free") pw.packed_cost = pw.packed_cost + domain_bounds(g.factors, m);
  auto points = build_ball(A, prm.points_radius);
  const std::vector<El> probes = coset_window(model, build_ball(A, prm.probe_radius));
  const El cgen = A.embed(1, Word::letter(0));
  const El cinv = A.inverse(cgen);
  const El z_image = A.embed(1, Word::letter(0).power(-prm.order));
  const std::size_t colors = static_cast<std::size_t>(2 * p - 1);
  pw.colors = colors;

  for (std::uint64_t seed : seeds) {
    PairWindowReport rep;
    rep.seed = seed;
    auto& cnt = rep.counts;
    OrbitPackings packs(g, prm.packing_radius, prm.packing);
    const Act::Point x0 = act.sample(seed);
    auto probe = [&](const El& a) { return act.act(a, x0, probes).coords; };
    auto eval = [&](const El& a) { return act.evaluate(act.act(a, x0, {El{}})); };
    std::size_t failures = 0, unresolved = 0, escapes = 0;
    std::string reason;
    auto fail = [&](const std::string& why) {
      ++failures;
      if (reason.empty()) reason = why;
    };
    // lift of psi_j^(+-1) at sigma(a) x0; nullopt when the packing has no edge there
    auto lift_psi = [&](const El& a, std::size_t j, bool inv) -> std::optional<El> {
      SymbolicPoint y = eval(a);
      const Packing& pk = packs.at(y.orbit);
      auto v = pk.find(y.g);
      if (!v) return std::nullopt;
      std::int32_t t = (inv ? pk.psi_inv : pk.psi)[j][*v];
      if (t < 0) return std::nullopt;
      return A.multiply(A.embed(2, pk.vertices[t].inverse() * y.g), a);
    };

    std::vector<std::uint32_t> all(points.size());
    for (std::uint32_t i = 0; i < points.size(); ++i) all[i] = i;
    Sets s1(points.size()), s2(points.size()), g1(points.size()), g2(points.size());
    bool orbits = false;
    for (int round = 0;; ++round) {
      s1 = Sets(points.size());
      s2 = Sets(points.size());
      g1 = Sets(points.size());
      g2 = Sets(points.size());
      std::set<std::uint64_t> short_orbits;  // orbits with a step left unresolved
      std::map<std::string, std::size_t> rc;
      unresolved = escapes = 0;
      for (std::uint32_t i = 0; i < points.size(); ++i) {
        const El& a = points.vertices[i];
        try {
          SymbolicPoint y = eval(a);
          // evaluation is B-equivariant
          if (round == 0)
            for (int x = 0; x < 2 * p; ++x) {
              El b = A.embed(2, Word::letter(x));
              ++cnt["equivariance_checks"];
              if (!(eval(A.multiply(b, a)) == act.base().act(Word::letter(x), y))) fail("evaluation is not equivariant");
            }
          for (std::size_t s = 0; s < points.step_count; s += 2) {
            const El& u = A.generators()[s / 2].element;
            El target = A.multiply(u, a);
            auto found = points.find(target);
            std::int32_t t = found ? static_cast<std::int32_t>(*found) : -1;
            if (t >= 0) s1.union_set(i, static_cast<std::uint32_t>(t));
            ++rc["generator_steps"];
            if (A.generators()[s / 2].label == 1) {
              // c is a generator of A2 too
              ++rc["direct_steps"];
              if (t >= 0) {
                s2.union_set(i, static_cast<std::uint32_t>(t));
                g1.union_set(i, static_cast<std::uint32_t>(t));
                g2.union_set(i, static_cast<std::uint32_t>(t));
              }
              continue;
            }
            // a B letter: realize beta(u) on the Y-orbit by a packed path and lift it
            const Word& ux = u.syllables.at(0).rep;
            const Packing& pk = packs.at(y.orbit);
            auto va = pk.find(y.g), vb = pk.find(y.g * ux.inverse());
            std::optional<std::vector<std::uint32_t>> path;
            if (va && vb) path = packed_path(pk, *va, *vb);
            if (!path) {
              // a step leaving the point ball is not part of either partition
              if (t < 0) {
                ++rc["unresolved_leaving"];
                continue;
              }
              ++unresolved;
              ++rc[va && vb ? "unresolved_no_path" : "unresolved_outside"];
              short_orbits.insert(y.orbit);
              continue;
            }
            El cur = a;
            for (std::size_t k = 0; k + 1 < path->size(); ++k) {
              const Word& from = pk.vertices[(*path)[k]];
              const Word& to = pk.vertices[(*path)[k + 1]];
              SymbolicPoint here = eval(cur);
              if (!(here.orbit == y.orbit && here.g == from)) {
                fail("lifted path leaves its Y-point");
                break;
              }
              cur = A.multiply(A.embed(2, to.inverse() * from), cur);
            }
            ++rc["lifted_steps"];
            rc["lifted_path_edges"] += path->size() - 1;
            if (probe(cur) != probe(target)) {
              fail("lifted path does not reach the A1 step");
              continue;
            }
            if (t >= 0) s2.union_set(i, static_cast<std::uint32_t>(t));
          }
          // psi moves that land inside the point ball
          for (std::size_t j = 0; j < colors; ++j)
            for (bool inv : {false, true}) {
              auto l = lift_psi(a, j, inv);
              if (!l) continue;
              if (auto t = points.find(*l)) {
                ++rc["psi_unions"];
                s2.union_set(i, *t);
              }
            }
        } catch (const WindowError&) {
          ++escapes;
        }
      }
      // every A2 union is a verified move, so s2 refines s1; equality certifies the window
      orbits = same_partition(s1, s2, all);
      bool grown = false;
      if (!orbits && round < prm.max_growth)
        for (std::uint64_t o : short_orbits)
          if (packs.radius(o) < prm.packing_radius + prm.max_growth) {
            packs.grow(o);
            grown = true;
          }
      if (!grown) {
        for (const auto& [k, v] : rc) cnt[k] = v;
        cnt["growth_rounds"] = static_cast<std::size_t>(round);
        break;
      }
    }
    if (!orbits && !unresolved && !escapes) fail("orbit partitions differ");
    if (!same_partition(g1, g2, all)) fail("subgroup orbit partitions differ");

    // the Z generator of the second pair is the lambda map: lifted, it is c^-order
    std::mt19937_64 rng(derive_seed(seed, 0x6A0));
    for (std::size_t k = 0; k < prm.gamma0_points; ++k) {
      const El& a = points.vertices[rng() % points.size()];
      try {
        SymbolicPoint y = eval(a);
        const Packing& pk = packs.at(y.orbit);
        auto v = pk.find(y.g);
        std::int32_t t = v ? pk.kappa_step(*v, 1) : -1;
        if (t < 0) {
          ++cnt["gamma0_outside"];
          continue;
        }
        El lifted = A.multiply(A.embed(2, pk.vertices[t].inverse() * y.g), a);
        ++cnt["gamma0_checks"];
        if (probe(lifted) != probe(A.multiply(z_image, a))) fail("Z-parts differ after lifting");
      } catch (const WindowError&) {
        ++escapes;
      }
    }

    // freeness of A2 = <c> * F_q on reduced words
    std::size_t checked = 0, skipped = 0, stabilizers = 0;
    for (std::size_t k = 0; k < prm.freeness_points; ++k) {
      const El a = k == 0 ? El{} : points.vertices[rng() % points.size()];
      auto start = probe(a);
      struct Frame {
        El cur;
        std::size_t last, next;
        int depth;
      };
      const std::size_t letters = 2 * (1 + colors);
      std::vector<Frame> stack{{a, SIZE_MAX, 0, 0}};
      while (!stack.empty()) {
        Frame& f = stack.back();
        if (f.depth == prm.word_length || f.next == letters) {
          stack.pop_back();
          continue;
        }
        std::size_t l = f.next++;
        if (f.last != SIZE_MAX && l == (f.last ^ 1)) continue;
        std::optional<El> nxt;
        El cur = f.cur;
        int depth = f.depth;
        try {
          if (l / 2 == 0)
            nxt = A.multiply(l % 2 ? cinv : cgen, cur);
          else
            nxt = lift_psi(cur, l / 2 - 1, l % 2);
          if (!nxt) {
            ++skipped;
            continue;
          }
          ++checked;
          if (probe(*nxt) == start) ++stabilizers;
        } catch (const WindowError&) {
          ++skipped;
          continue;
        }
        stack.push_back({*nxt, l, 0, depth + 1});
      }
    }
    if (stabilizers) fail("a reduced word of A2 fixes a sampled point");
    cnt["words_checked"] = checked;
    cnt["words_skipped"] = skipped;
    cnt["stabilizers"] = stabilizers;
    cnt["unresolved"] = unresolved;
    cnt["window_escapes"] = escapes;
    cnt["failures"] = failures;
    cnt["orbits_packed"] = packs.size();
    cnt["partition_certified"] = orbits;
    if (failures) {
      rep.verdict = Verdict::Fail;
      rep.reason = reason;
    } else if (!orbits) {
      rep.verdict = Verdict::Inconclusive;
      rep.reason = unresolved ? "generator steps not realized inside the packed region" : "coset window escape";
    }
    pw.windows.push_back(std::move(rep));
  }
  return pw;
}

}  // namespace treelab
