#include "doctest.h"
#include "oracles.hpp"

#include "treelab/amalgam.hpp"
#include "treelab/cayley.hpp"
#include "treelab/dual.hpp"
#include "treelab/presentation.hpp"

#include <map>
#include <random>
#include <set>

using namespace treelab;

namespace {

Word basis_word(std::initializer_list<int> xs) {
  std::vector<Letter> raw;
  for (int x : xs) raw.push_back(gen_letter(std::abs(x) - 1, x > 0 ? 1 : -1));
  return Word(raw);
}

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::uniform_int_distribution<int> len(0, max_len), g(0, rank - 1), s(0, 1);
  std::vector<Letter> raw;
  int l = len(rng);
  for (int i = 0; i < l; ++i) raw.push_back(gen_letter(g(rng), s(rng) ? 1 : -1));
  return Word(raw);
}

}  // namespace

TEST_CASE("reduce_word examples") {
  Presentation f2 = free_presentation(2);
  std::vector<Letter> aa{gen_letter(0, 1), gen_letter(0, -1)};
  CHECK(reduce_word(f2, aa).empty());
  std::vector<Letter> abba{gen_letter(0), gen_letter(1), gen_letter(1, -1), gen_letter(0)};
  CHECK(reduce_word(f2, abba) == basis_word({1, 1}));

  Presentation s1 = surface_presentation(1);
  std::vector<Letter> k{gen_letter(0)};
  CHECK(reduce_word(s1, k) == basis_word({1, 2, -1, -2}));
  CHECK(s1.basis_alphabet().format(reduce_word(s1, k)) == "a1.b1.a1^-1.b1^-1");

  std::vector<Letter> bad{gen_letter(7)};
  CHECK_THROWS_AS(reduce_word(s1, bad), UsageError);
}

TEST_CASE("reduce_word is idempotent and multiplicative") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10000; ++t) {
    Word u = random_word(rng, 4, 12), v = random_word(rng, 4, 12);
    std::vector<Letter> raw = u.letters();
    std::vector<Letter> vr = v.letters();
    raw.insert(raw.end(), vr.begin(), vr.end());
    CHECK(Word(u.letters()) == u);
    CHECK(Word(raw) == u * v);
    oracle::IntWord iu;
    for (auto l : raw) iu.push_back(l.sign * (l.gen + 1));
    CHECK(Word(oracle::to_letters(oracle::freely_reduce(iu))) == u * v);
  }
}

TEST_CASE("word formatting round trip") {
  Alphabet ab = Alphabet::free_basis(2);
  Word w = basis_word({1, -3, 2, 2, -4});
  CHECK(ab.parse(ab.format(w)) == w);
  CHECK(ab.format(Word()) == "e");
  CHECK_THROWS_AS(ab.parse("a1.zz"), UsageError);
}

TEST_CASE("surface presentation") {
  CHECK(surface_presentation(1).relators.at(0).size() == 5);
  CHECK(surface_presentation(2).relators.at(0).size() == 9);
  CHECK(surface_presentation(1).generator_count() == 3);
  CHECK(surface_presentation(3).generator_count() == 7);
  CHECK_THROWS_AS(surface_presentation(0), UsageError);
}

TEST_CASE("cayley window sizes against brute force") {
  CayleyWindow c0 = cayley_window(surface_presentation(1), 0);
  CHECK(c0.size() == 1);
  CHECK(c0.ball.edges.empty());

  CayleyWindow c1 = cayley_window(surface_presentation(1), 1);
  CHECK(c1.size() == 7);
  CHECK(c1.ball.find(kappa_word(1)).has_value());

  CHECK(cayley_window(free_presentation(2), 2).size() == 17);

  for (int p = 1; p <= 2; ++p) {
    Presentation pres = surface_presentation(p);
    for (int r = 0; r <= 3; ++r) {
      std::set<std::vector<std::pair<int, int>>> seen;
      for (const auto& iw : oracle::reduced_words(2 * p + 1, r)) {
        Word w = reduce_word(pres, oracle::to_letters(iw));
        std::vector<std::pair<int, int>> key;
        for (auto l : w.letters()) key.emplace_back(l.gen, l.sign);
        seen.insert(key);
      }
      CHECK(cayley_window(pres, r).size() == seen.size());
    }
  }
  CHECK_THROWS_AS(cayley_window(surface_presentation(2), 8, 5000), SizeError);
}

TEST_CASE("cayley window edges and translation invariance") {
  CayleyWindow cw = cayley_window(surface_presentation(1), 3);
  auto gens = cw.pres.generator_elements();
  for (const auto& e : cw.ball.edges) CHECK(cw.ball.vertices[e.target] == cw.ball.vertices[e.source] * gens[e.gen]);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    const Word& g = cw.ball.vertices[rng() % cw.size()];
    for (const auto& e : cw.ball.edges) {
      if (!cw.ball.interior[e.source]) continue;
      auto s = cw.ball.find(g * cw.ball.vertices[e.source]);
      auto d = cw.ball.find(g * cw.ball.vertices[e.target]);
      if (s && d) CHECK(cw.ball.neighbor(*s, 2 * e.gen) == static_cast<std::int32_t>(*d));
    }
  }
}

TEST_CASE("cells are closed relator paths with one kappa edge") {
  for (int p = 1; p <= 3; ++p) {
    SurfaceComplex sc(p);
    CayleyWindow cw = cayley_window(surface_presentation(p), 2);
    auto gens = cw.pres.generator_elements();
    for (const Word& g : cw.ball.vertices) {
      auto vs = sc.cell_vertices(g);
      REQUIRE(vs.size() == static_cast<std::size_t>(4 * p + 1));
      CHECK(vs.back() == g);
      CHECK(vs.front() * sc.kappa() == g);
      int kappa_edges = 0;
      for (std::size_t t = 0; t + 1 < vs.size(); ++t) {
        Word step = vs[t].inverse() * vs[t + 1];
        CHECK(step.size() == 1);
        kappa_edges += step == sc.kappa();
      }
      CHECK(kappa_edges == 0);  // plus the closing one
    }
  }
}

TEST_CASE("tree coordinates: delta basis and inverse") {
  for (int p = 1; p <= 4; ++p) {
    SurfaceComplex sc(p);
    for (int x = 0; x < 2 * p; ++x) {
      CHECK(sc.phi(sc.gamma_of_basis(x)) == Word::letter(x));
      // both cells around [e, x] are the delta translate of each other
      Word left = sc.other_cell(Word(), x), right = sc.owner_cell(Word(), x);
      CHECK(left * sc.delta(x) == right);
      auto lv = sc.cell_vertices(left), rv = sc.cell_vertices(right);
      CHECK(lv[sc.position(x)] == Word());
      CHECK(lv[sc.position(x) + 1] == Word::letter(x));
      CHECK(rv[sc.inverse_position(x) + 1] == Word());
      CHECK(rv[sc.inverse_position(x)] == Word::letter(x));
      CHECK(sc.crossed_source(right, x) == Word());
    }
    std::mt19937_64 rng(p);
    for (int t = 0; t < 500; ++t) {
      Word w = random_word(rng, 2 * p, 10);
      CHECK(sc.phi(sc.phi_inverse(w)) == w);
      CHECK(sc.phi_inverse(sc.phi(w)) == w);
    }
  }
  // p = 1 values
  SurfaceComplex s1(1);
  CHECK(s1.delta(0) == basis_word({2, 1, -2, -1, -2}));
  CHECK(s1.delta(1) == basis_word({2, 1, -2}));
}

TEST_CASE("dual window structure") {
  auto sc = std::make_shared<SurfaceComplex>(1);
  CayleyWindow cw = cayley_window(surface_presentation(1), 3);
  DualWindow dw = dual_window(sc, cw);
  CHECK(dw.degree_regular);
  CHECK(dw.observed_interior_degree == 4);

  // brute-force acyclicity on the interior
  std::vector<std::pair<std::size_t, std::size_t>> inner;
  for (const auto& e : dw.edges)
    if (dw.interior[e.owner] && dw.interior[e.other]) inner.emplace_back(e.owner, e.other);
  CHECK(oracle::has_cycle_exhaustive(dw.size(), inner) == false);

  // crossing map: no k-edge crossed; every shared non-k edge crossed once
  std::map<std::int64_t, int> crossings;
  for (const auto& e : dw.edges) {
    REQUIRE(e.primal_edge >= 0);
    crossings[e.primal_edge]++;
    CHECK(cw.ball.edges[e.primal_edge].gen != 0);
  }
  for (auto [edge, count] : crossings) CHECK(count == 1);
  // a non-k edge lying on two full cells is crossed
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::int64_t> edge_of;
  for (std::size_t i = 0; i < cw.ball.edges.size(); ++i)
    edge_of[{cw.ball.edges[i].source, cw.ball.edges[i].gen}] = static_cast<std::int64_t>(i);
  std::map<std::int64_t, int> on_cells;
  for (const Word& g : dw.cells) {
    auto vs = sc->cell_vertices(g);
    for (std::size_t t = 0; t < sc->relator().size(); ++t) {
      Letter l = sc->relator()[t];
      const Word& from = l.sign > 0 ? vs[t] : vs[t + 1];
      auto s = cw.ball.find(from);
      REQUIRE(s);
      on_cells[edge_of.at({*s, static_cast<std::uint32_t>(l.gen + 1)})]++;
    }
  }
  for (auto [edge, count] : on_cells) {
    CHECK(count <= 2);
    if (count == 2) CHECK(crossings.count(edge) == 1);
    else CHECK(crossings.count(edge) == 0);
  }
}

TEST_CASE("dual interior acyclic for small genus and radius") {
  // a full cell needs radius >= 2p
  for (int p = 1; p <= 2; ++p) {
    auto sc = std::make_shared<SurfaceComplex>(p);
    for (int r = 2 * p; r <= 5; ++r) {
      CayleyWindow cw = cayley_window(surface_presentation(p), r);
      DualWindow dw = dual_window(sc, cw);
      std::vector<std::pair<std::size_t, std::size_t>> inner;
      std::size_t interior = 0;
      for (std::size_t v = 0; v < dw.size(); ++v) interior += dw.interior[v];
      for (const auto& e : dw.edges)
        if (dw.interior[e.owner] && dw.interior[e.other]) inner.emplace_back(e.owner, e.other);
      CHECK(oracle::cycle_rank(dw.size(), inner) == 0);
      // the full dual is a forest too
      std::vector<std::pair<std::size_t, std::size_t>> all;
      for (const auto& e : dw.edges) all.emplace_back(e.owner, e.other);
      CHECK(oracle::cycle_rank(dw.size(), all) == 0);
      CHECK(dw.degree_regular);
      if (interior) CHECK(dw.observed_interior_degree == 4 * p);
    }
  }
}

TEST_CASE("dual ball cells are distinct and adjacent cells share the crossed edge") {
  for (int p = 1; p <= 3; ++p) {
    auto sc = std::make_shared<SurfaceComplex>(p);
    DualWindow dw = dual_ball(sc, p == 3 ? 3 : 4);
    std::set<std::vector<std::pair<int, int>>> cells;
    for (const Word& c : dw.cells) {
      std::vector<std::pair<int, int>> key;
      for (auto l : c.letters()) key.emplace_back(l.gen, l.sign);
      cells.insert(key);
    }
    CHECK(cells.size() == dw.size());
    for (const auto& e : dw.edges) {
      Word h = e.primal_source, hx = h * Word::letter(e.orbit - 1);
      for (std::uint32_t v : {e.owner, e.other}) {
        auto vs = sc->cell_vertices(dw.cells[v]);
        CHECK(std::find(vs.begin(), vs.end(), h) != vs.end());
        CHECK(std::find(vs.begin(), vs.end(), hx) != vs.end());
      }
    }
  }
}

TEST_CASE("dual ball") {
  auto sc = std::make_shared<SurfaceComplex>(1);
  DualWindow dw = dual_ball(sc, 3);
  CHECK(dw.size() == 1 + 4 + 12 + 36);
  CHECK(dw.edges.size() == dw.size() - 1);
  for (std::size_t v = 0; v < dw.size(); ++v) CHECK(sc->phi(dw.trees[v]) == dw.cells[v]);
  for (std::uint32_t v : dw.order)
    if (dw.parent[v] >= 0) CHECK(dw.trees[dw.parent[v]] * Word({dw.parent_step[v]}) == dw.trees[v]);
}

TEST_CASE("amalgam normal form examples") {
  const int n = 2, p = 1;
  // k as a word of copy 1 and of copy 2
  std::vector<Letter> k1{gen_letter(1), gen_letter(2), gen_letter(1, -1), gen_letter(2, -1)};
  std::vector<Letter> k2{gen_letter(3), gen_letter(4), gen_letter(3, -1), gen_letter(4, -1)};
  std::vector<Letter> k0{gen_letter(0)};
  auto nk1 = amalgam_normal_form(k1, n, p), nk2 = amalgam_normal_form(k2, n, p);
  CHECK(nk1 == nk2);
  CHECK(nk1 == amalgam_normal_form(k0, n, p));
  CHECK(nk1.syllables.empty());
  CHECK(nk1.power == 1);

  std::vector<Letter> in1{gen_letter(1), gen_letter(2), gen_letter(2)};
  auto x = amalgam_normal_form(in1, n, p);
  CHECK(x.syllables.size() == 1);
  CHECK(x.syllables[0].copy == 1);

  std::vector<Letter> canc{gen_letter(1), gen_letter(3), gen_letter(3, -1), gen_letter(1, -1)};
  CHECK(amalgam_normal_form(canc, n, p).is_identity());

  std::vector<Letter> bad{gen_letter(9)};
  CHECK_THROWS_AS(amalgam_normal_form(bad, n, p), UsageError);
}

TEST_CASE("amalgam window") {
  CHECK(amalgam_window(2, 1, 0).size() == 1);
  CHECK(amalgam_window(2, 1, 1).size() == 9);
  std::size_t prev = 0;
  for (int r = 0; r <= 4; ++r) {
    auto w = amalgam_window(2, 1, r);
    CHECK(w.size() > prev);
    prev = w.size();
  }
}

TEST_CASE("amalgam group laws") {
  AmalgamGroup g(3, 1, true);
  std::mt19937_64 rng(5);
  auto random_elem = [&] {
    AmalgamNormalForm x;
    int len = static_cast<int>(rng() % 7);
    for (int i = 0; i < len; ++i) {
      const auto& gen = g.generators()[rng() % g.generators().size()];
      x = g.multiply(x, rng() % 2 ? gen.element : g.inverse(gen.element));
    }
    return x;
  };
  for (int t = 0; t < 2000; ++t) {
    auto a = random_elem(), b = random_elem(), c = random_elem();
    CHECK(g.multiply(g.multiply(a, b), c) == g.multiply(a, g.multiply(b, c)));
    CHECK(g.multiply(a, g.inverse(a)).is_identity());
    CHECK(g.multiply(g.inverse(a), a).is_identity());
    for (const auto& s : a.syllables) {
      CHECK(!s.rep.empty());
      CHECK(g.split_coset(s.rep).second == 0);
    }
    for (std::size_t i = 1; i < a.syllables.size(); ++i) CHECK(a.syllables[i].copy != a.syllables[i - 1].copy);
  }
}

TEST_CASE("amalgam normal form agrees with Dehn's algorithm (n=2, p=1)") {
  // genus-2 surface group <a,b,c,d | [a,b] = [c,d]>
  oracle::Dehn dehn({1, 2, -1, -2, 4, 3, -4, -3});
  auto expand = [](const oracle::IntWord& w) {
    oracle::IntWord out;
    for (int x : w) {
      int g = std::abs(x);
      if (g == 1) {
        oracle::IntWord k{1, 2, -1, -2};
        if (x < 0) k = oracle::inverse(k);
        out.insert(out.end(), k.begin(), k.end());
      } else {
        out.push_back(x > 0 ? g - 1 : -(g - 1));
      }
    }
    return out;
  };
  auto words = oracle::reduced_words(5, 6);
  std::size_t agree = 0;
  for (const auto& w : words) {
    bool nf = amalgam_normal_form(oracle::to_letters(w), 2, 1).is_identity();
    agree += nf == dehn.trivial(expand(w));
  }
  CHECK(agree == words.size());

  auto short_words = oracle::reduced_words(5, 3);
  std::vector<AmalgamNormalForm> nfs;
  for (const auto& w : short_words) nfs.push_back(amalgam_normal_form(oracle::to_letters(w), 2, 1));
  std::size_t mismatches = 0;
  for (std::size_t i = 0; i < short_words.size(); ++i)
    for (std::size_t j = 0; j < short_words.size(); ++j) {
      oracle::IntWord uv = short_words[i];
      auto vi = oracle::inverse(short_words[j]);
      uv.insert(uv.end(), vi.begin(), vi.end());
      mismatches += (nfs[i] == nfs[j]) != dehn.trivial(expand(uv));
    }
  CHECK(mismatches == 0);
}
