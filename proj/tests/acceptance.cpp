// One line per acceptance criterion; exit status 1 if any fails or runs over.
#include "oracles.hpp"

#include "treelab/constructions.hpp"
#include "treelab/events.hpp"
#include "treelab/pairs.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>

using namespace treelab;

namespace {

// tolerances
const Dyadic kTranslatedGap = Dyadic::pow2(-38);
const Dyadic kCostGap = Dyadic::pow2(-36);
constexpr int kEventTruncation = 40;
constexpr double kSigmas = 3.0;
constexpr double kInconclusiveCap = 0.05;

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  void need(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) note << "FAILED: ";
      note << what << "; ";
      ok = false;
    }
  }
};

Word random_word(std::mt19937_64& rng, int rank, int max_len) {
  std::vector<Letter> ls;
  int n = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  for (int i = 0; i < n; ++i) ls.push_back(gen_letter(static_cast<int>(rng() % rank), rng() % 2 ? 1 : -1));
  return Word(ls);
}

std::shared_ptr<const DyadicSet> random_interval_set(std::mt19937_64& rng) {
  unsigned level = 1 + static_cast<unsigned>(rng() % 3);
  std::vector<Pattern> parts;
  for (unsigned v = 0; v < (1u << level); ++v) {
    if (rng() % 2) continue;
    std::string bits;
    for (unsigned j = 0; j < level; ++j) bits += ((v >> (level - 1 - j)) & 1) ? '1' : '0';
    parts.push_back(Pattern::cylinder(bits));
  }
  return std::make_shared<const DyadicSet>("S", std::move(parts));
}

std::vector<std::uint64_t> seed_range(std::uint64_t from, std::size_t n) {
  std::vector<std::uint64_t> s(n);
  for (std::size_t i = 0; i < n; ++i) s[i] = from + i;
  return s;
}

bool within_sigmas(std::size_t hits, std::size_t n, double p) {
  double sigma = std::sqrt(std::max(p * (1 - p), 1e-12) / static_cast<double>(n));
  return std::abs(static_cast<double>(hits) / static_cast<double>(n) - p) <= kSigmas * sigma;
}

std::shared_ptr<const DualWindow> dual(int p, int r) {
  return std::make_shared<const DualWindow>(dual_ball(std::make_shared<const SurfaceComplex>(p), r));
}

void partition_normalization(Outcome& o) {
  Dyadic partial;
  const int terms = 200;
  for (int i = 1; i <= terms; ++i) partial += block_left(i).measure() + block_right(i).measure();
  o.need(partial + Dyadic::pow2(-terms) == Dyadic(1), "partial sums plus tail");
  o.need(block_family().measure() == Dyadic(1), "block family measure");
  for (int p : {1, 2, 3}) {
    DyadicSystem sys = forest_dynamics(p);
    o.need(sys.set("A1")->measure() == Dyadic(1, 1) && sys.set("A2")->measure() == Dyadic(1, 1), "m(A1), m(A2)");
  }
  o.note << "sum over " << terms << " blocks + 2^-" << terms << " = 1, m(A1) = m(A2) = 1/2";
}

void dynamics_fidelity(Outcome& o) {
  std::size_t checked = 0;
  for (int p : {1, 2}) {
    DyadicSystem sys = forest_dynamics(p);
    for (int i = 1; i <= 40; ++i) {
      DyadicSet next = DyadicSet::of_interval(block(i + 1)).canonical();
      DyadicSet uv("UV", {Pattern::cylinder(block_left(i + 1).bits()), Pattern::cylinder(block_right(i + 1).bits())});
      o.need(uv.canonical() == next, "U u V = B at level " + std::to_string(i + 1));
      auto image = [](const PiecewiseTranslation& h, const DyadicInterval& I) {
        return h.inverse().preimage(DyadicSet::of_interval(I));
      };
      o.need(image(sys.maps[0], block_left(i)) == next, "h1(U_" + std::to_string(i) + ")");
      o.need(image(sys.maps[1], block_right(i)) == next, "h2(V_" + std::to_string(i) + ")");
      checked += 2;
    }
  }
  o.note << checked << " block images equal, p = 1, 2, i <= 40";
}

void forest_marginals(Outcome& o) {
  for (int p : {1, 2}) {
    DyadicSystem sys = forest_dynamics(p);
    const MeasureBounds half{Dyadic(1, 1), Dyadic(1, 1)}, zero{Dyadic(0), Dyadic(0)};
    o.need(edge_marginal(sys, Word(), 1) == half && edge_marginal(sys, Word(), 2) == half, "e1*, e2* = 1/2");
    for (int j = 3; j <= 2 * p; ++j) o.need(edge_marginal(sys, Word(), j) == zero, "e_j* = 0");
    std::mt19937_64 rng(31 + p);
    for (int t = 0; t < 30; ++t) {
      Word g = random_word(rng, 2 * p, 5);
      for (int j = 1; j <= 2 * p; ++j) {
        MeasureBounds b = edge_marginal(sys, g, j, kEventTruncation);
        o.need(b.contains(j <= 2 ? Dyadic(1, 1) : Dyadic(0)) && b.gap() <= kTranslatedGap, "translated marginal");
      }
    }
  }
  // pattern law of a radius-2 dual ball under each generator
  {
    DyadicSystem sys = forest_dynamics(1);
    auto dw = dual(1, 2);
    EventDistribution d0 = event_distribution(sys, pattern_constraints(sys, *dw, Word()), kEventTruncation);
    o.need(d0.unknown <= kTranslatedGap, "pattern law gap");
    for (int g = 0; g < 2; ++g)
      for (int s : {1, -1}) {
        EventDistribution d1 =
            event_distribution(sys, pattern_constraints(sys, *dw, Word::letter(g, s)), kEventTruncation);
        o.need(d1.unknown <= kTranslatedGap, "translated pattern law gap");
        std::set<std::vector<std::uint8_t>> keys;
        for (auto& [k, m] : d0.cells) keys.insert(k);
        for (auto& [k, m] : d1.cells) keys.insert(k);
        for (const auto& k : keys) o.need(d0.bounds(k).overlaps(d1.bounds(k)), "translated pattern bounds overlap");
      }
  }
  const std::size_t n = 100000;
  DyadicSystem sys = forest_dynamics(2);
  const Word g = Word({gen_letter(0), gen_letter(1, -1)});
  std::size_t e1 = 0, e2 = 0, e3 = 0, moved = 0;
  for (std::size_t s = 0; s < n; ++s) {
    LazyPoint y = sample_point(s);
    e1 += member(y, *sys.orbit_set(1));
    e2 += member(y, *sys.orbit_set(2));
    e3 += member(y, *sys.orbit_set(3));
    moved += member(apply_word(sys, g.inverse(), y), *sys.orbit_set(1));
  }
  o.need(within_sigmas(e1, n, 0.5) && within_sigmas(e2, n, 0.5) && within_sigmas(moved, n, 0.5), "Monte Carlo 1/2");
  o.need(e3 == 0, "Monte Carlo e3* never present");
  o.note << "exact 1/2 and 0; translated gaps <= 2^-38; MC e1* " << e1 << "/" << n << ", e2* " << e2 << ", g.e1* "
         << moved << ", e3* " << e3;
}

void one_ended(Outcome& o) {
  std::size_t forests = 0, interior = 0;
  for (int p : {1, 2}) {
    DyadicSystem sys = forest_dynamics(p);
    auto dw = dual(p, 6);
    std::size_t bad = 0;
    for (std::uint64_t s = 0; s < 10000; ++s) {
      LazyPoint y = sample_point(s);
      OneEndedReport r = check_one_ended(forest_restriction(sys, y, dw), sys, y);
      bad += !r.ok();
      interior += r.interior_checked;
      ++forests;
    }
    o.need(bad == 0, "certificate failed for p = " + std::to_string(p));

    // negative controls on the same window
    LazyPoint y = sample_point(3);
    ForestConfig cfg = forest_restriction(sys, y, dw);
    std::size_t e = 0;
    while (!cfg.present[e]) ++e;
    ForestConfig two = cfg;
    two.direction[e] = kOwnerToOther | kOtherToOwner;
    o.need(check_one_ended(two, sys, y).two_cycles >= 1, "2-cycle control");
    ForestConfig rev = cfg;
    rev.direction[e] = kOtherToOwner;
    o.need(check_one_ended(rev, sys, y).level_violations >= 1, "level control");
    OneEndedReport none = check_one_ended(ForestConfig::empty(dw), sys, y);
    o.need(none.interior_checked > 0 && none.outdegree_violations == none.interior_checked, "out-degree control");
  }
  o.note << forests << " forests, " << interior << " interior vertices certified; 3 controls per p detected";
}

void pushforward(Outcome& o) {
  auto complex = std::make_shared<const SurfaceComplex>(1);
  auto cw = std::make_shared<const CayleyWindow>(cayley_window(surface_presentation(1), 5));
  auto dw = std::make_shared<const DualWindow>(dual_window(complex, *cw));
  DyadicSystem sys = forest_dynamics(1);
  std::size_t kappa = 0, kept = 0, cycles = 0, bush = 0, reconnected = 0, removed = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    SpanningSubgraph h = pushforward_tree(forest_sample(sys, s, dw), cw);
    kappa += h.kappa_edges;
    kept += h.kappa_kept;
    cycles += h.treeing.verdict == Verdict::Fail;
    bush += h.interior_bush;
    reconnected += h.reconnected;
    removed += h.removed;
  }
  o.need(kept == kappa, "kappa edges dropped");
  o.need(cycles == 0, "interior cycle");
  o.need(reconnected == bush && bush > 0, "bush edge not reconnected");
  o.note << "kappa kept " << kept << "/" << kappa << ", interior cycles " << cycles << ", reconnected " << reconnected
         << "/" << bush << " (removed " << removed << ")";
}

void costs(Outcome& o) {
  for (int p : {1, 2, 3}) {
    MeasureBounds c = cost(surface_treeing(p)).total;
    o.need(c.contains(Dyadic(2 * p)) && c.gap() <= kCostGap, "surface cost p = " + std::to_string(p));
    o.note << "surface p=" << p << " [" << c.lower.to_double() << ", " << c.upper.to_double() << "] ";
  }
  for (auto [n, p] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    MeasureBounds c = cost(assemble_amalgam_treeing(n, p)).total;
    const int want = 1 + n * (2 * p - 1);
    o.need(c.contains(Dyadic(want)) && c.gap() <= kCostGap, "amalgam cost (" + std::to_string(n) + "," +
                                                                 std::to_string(p) + ")");
    o.note << "amalgam (" << n << "," << p << ") ~ " << want << " gap " << c.gap().to_double() << " ";
  }
}

void amalgam_split(Outcome& o) {
  for (int n : {2, 3}) {
    auto g = assemble_amalgam_treeing(n, 1);
    auto ball = std::make_shared<const BallOf<AmalgamGroup>>(build_ball(*g.group, n == 2 ? 4 : 3));
    std::size_t sampled = 0, closed = 0, failed = 0;
    for (std::uint64_t s = 0; sampled < 1000; ++s) {
      auto w = orbit_window(g, ball, s);
      o.need(verify_treeing(w.graph).verdict != Verdict::Fail, "amalgam window has a cycle");
      for (int c = 1; c <= n; ++c) {
        SplitReport r = amalgam_split_check(w, g, c, 250, s * 10 + c);
        failed += r.verdict != Verdict::Pass || !r.class_forest;
        sampled += r.chains_sampled;
        closed += r.chains_closed;
      }
    }
    o.need(failed == 0, "split failed for n = " + std::to_string(n));
    o.note << "(" << n << ",1): " << sampled << " chains, " << closed << " closed; ";
  }
  auto g = assemble_amalgam_treeing(2, 1);
  SplitReport bad = amalgam_split_check(orbit_window(g, 3, 3), g, 1, 400, 9, true);
  o.need(bad.verdict == Verdict::Fail, "mislabeled control passed");
  o.note << "mislabeled control fails";
}

void coinduction(Outcome& o) {
  auto act = odometer_coinduction(8);
  const DyadicSystem& sys = *act.base().system;
  std::mt19937_64 rng(77);
  std::size_t law = 0, escapes = 0, law_bad = 0;
  while (law < 1000) {
    Word a1 = random_word(rng, 2, 3), a2 = random_word(rng, 2, 3);
    std::vector<Word> keys;
    for (int i = 0; i < 4; ++i) keys.push_back(act.model().key(random_word(rng, 2, 2)));
    auto f = act.sample(rng());
    try {
      auto lhs = act.act(a1, act.act(a2, f, act.sources(a1, keys)), keys);
      auto rhs = act.act(a1 * a2, f, keys);
      for (const Word& h : keys) law_bad += !(lhs.coords.at(h) == rhs.coords.at(h));
      ++law;
    } catch (const WindowError&) {
      ++escapes;
    }
  }
  o.need(law_bad == 0, "action law");

  std::size_t eq_bad = 0;
  for (int i = 0; i < 1000; ++i) {
    Word b = Word::letter(0).power(static_cast<int>(rng() % 9) - 4);
    auto f = act.sample(rng());
    eq_bad += !(act.evaluate(act.act(b, f, {Word{}})) == act.base().act(act.model().to_b(b), act.evaluate(f)));
  }
  o.need(eq_bad == 0, "B-equivariance");

  auto plain = odometer_coinduction(4, 0), twisted = odometer_coinduction(4, 3);
  std::size_t section_bad = 0, differing = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::pair<Word, std::shared_ptr<const DyadicSet>>> events;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < k; ++j) events.push_back({random_word(rng, 2, 4), random_interval_set(rng)});
    auto c0 = plain.psi_cylinder(events), c1 = twisted.psi_cylinder(events);
    for (std::size_t j = 0; j < c0.size(); ++j) differing += !(c0[j].constraint.word == c1[j].constraint.word);
    MeasureBounds m0 = cylinder_measure<Word, WordHash>(sys, c0), m1 = cylinder_measure<Word, WordHash>(sys, c1);
    section_bad += !m0.exact() || !(m0 == m1);
  }
  o.need(section_bad == 0 && differing > 0, "section independence");

  // cylinder measures are preserved by the action
  std::size_t pullback_bad = 0;
  for (int i = 0; i < 100; ++i) {
    Word a = random_word(rng, 2, 3);
    Cylinder<Word> c;
    for (int k = 0; k < 3; ++k)
      c.push_back({act.model().key(random_word(rng, 2, 2)), {random_word(rng, 1, 3), random_interval_set(rng), false}});
    pullback_bad += !(cylinder_measure<Word, WordHash>(sys, act.pullback(a, c)) == cylinder_measure<Word, WordHash>(sys, c));
  }
  o.need(pullback_bad == 0, "pullback measure");

  Word t = Word::letter(1);
  auto half = std::make_shared<const DyadicSet>("L", std::vector<Pattern>{Pattern::cylinder("0")});
  Cylinder<Word> c{{Word{}, {Word{}, half, false}}, {t, {Word{}, half, false}}};
  MeasureBounds m = cylinder_measure<Word, WordHash>(sys, c), mi = cylinder_measure<Word, WordHash>(sys, act.image(t, c));
  const MeasureBounds quarter{Dyadic::pow2(-2), Dyadic::pow2(-2)};
  o.need(m == quarter && mi == quarter, "1/4 cylinder");
  o.note << "law " << law << " pairs (" << escapes << " escapes), equivariance 1000, sections 100 (" << differing
         << " differing words), pullbacks 100, cylinder 1/4 -> " << mi.lower.str();
}

void pair_witnesses(Outcome& o) {
  PairWitness r3 = pair_witness_window(PairKind::Surface, 1, 0, 3, seed_range(0, 200));
  std::size_t bad = 0;
  for (const auto& w : r3.windows) bad += w.counts.at("orbit_mismatch") + w.counts.at("subgroup_orbit_mismatch");
  auto t3 = r3.totals();
  o.need(r3.count(Verdict::Fail) == 0 && bad == 0, "surface radius 3 partitions");
  o.need(t3["z_mismatches"] == 0, "surface Z-parts");
  o.need(t3["stabilizers"] == 0 && t3["words_checked"] > 0, "surface freeness");

  PairWitness r4 = pair_witness_window(PairKind::Surface, 1, 0, 4, seed_range(1000, 1000));
  auto t4 = r4.totals();
  o.need(r4.count(Verdict::Fail) == 0 && t4["z_mismatches"] == 0, "surface radius 4");
  o.need(r4.inconclusive_fraction() <= kInconclusiveCap, "radius 4 inconclusive fraction");

  AmalgamPairParams prm;
  PairWitness am = amalgam_coind_pair(1, seed_range(0, 10), prm);
  auto ta = am.totals();
  o.need(am.count(Verdict::Fail) == 0, "amalgam pair failed window");
  o.need(ta["partition_certified"] == am.windows.size(), "amalgam partitions certified");
  o.need(ta["gamma0_checks"] >= 1000, "gamma0 points");
  o.need(ta["stabilizers"] == 0 && ta["words_checked"] > 0, "amalgam freeness");
  o.note << "surface r3 " << r3.windows.size() << " windows, " << r3.count(Verdict::Inconclusive)
         << " inconclusive; r4 " << r4.count(Verdict::Inconclusive) << "/" << r4.windows.size()
         << " inconclusive; amalgam " << ta["partition_certified"] << "/" << am.windows.size() << " certified ("
         << am.count(Verdict::Inconclusive) << " inconclusive), "
         << ta["gamma0_checks"] << " gamma0 points, " << ta["words_checked"] + t3["words_checked"] << " words";
}

bool interior_cycle_oracle(const WindowGraph& g) {
  std::vector<std::pair<std::size_t, std::size_t>> es;
  for (const auto& e : g.edges)
    if (g.interior[e.source] && g.interior[e.target]) es.push_back({e.source, e.target});
  return oracle::has_cycle_exhaustive(g.vertex_count, es);
}

void oracle_equivalence(Outcome& o) {
  // genus-2 surface group <a,b,c,d | [a,b] = [c,d]>; generator 1 is k = [a,b]
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
  std::size_t nf_bad = 0;
  for (const auto& w : words)
    nf_bad += amalgam_normal_form(oracle::to_letters(w), 2, 1).is_identity() != dehn.trivial(expand(w));
  o.need(nf_bad == 0, "normal form vs rewriting");

  std::mt19937_64 rng(1010);
  std::size_t graphs = 0, cyc_bad = 0, with_cycle = 0;
  for (int t = 0; t < 1000; ++t) {
    WindowGraph g;
    g.vertex_count = 2 + rng() % 199;
    g.interior.resize(g.vertex_count);
    for (auto& f : g.interior) f = rng() % 5 != 0;
    for (std::uint32_t v = 1; v < g.vertex_count; ++v)
      if (rng() % 3) g.edges.push_back({v, static_cast<std::uint32_t>(rng() % v), 0});
    int chords = static_cast<int>(rng() % 5);
    for (int c = 0; c < chords; ++c)
      g.edges.push_back({static_cast<std::uint32_t>(rng() % g.vertex_count),
                         static_cast<std::uint32_t>(rng() % g.vertex_count), 1});
    bool want = interior_cycle_oracle(g);
    cyc_bad += (verify_treeing(g).verdict == Verdict::Fail) != want;
    with_cycle += want;
    ++graphs;
  }
  auto st = surface_treeing(1);
  auto extra = st;
  extra.maps.push_back({"ab", "free", (Word::letter(0) * Word::letter(1)).inverse(), st.maps[1].domain});
  for (std::uint64_t s = 0; s < 100; ++s)
    for (const auto* g : {&st, &extra}) {
      auto w = orbit_window(*g, s, 3);
      o.need(w.size() <= 200, "orbit window over 200 vertices");
      bool want = interior_cycle_oracle(w.graph);
      cyc_bad += (verify_treeing(w.graph).verdict == Verdict::Fail) != want;
      with_cycle += want;
      ++graphs;
    }
  o.need(cyc_bad == 0, "cycle detection vs exhaustive search");
  o.note << words.size() << " words agree; " << graphs << " windows agree (" << with_cycle << " with a cycle)";
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {1, "partition normalization", 1, partition_normalization},
      {2, "dynamics fidelity", 1, dynamics_fidelity},
      {3, "forest marginals", 60, forest_marginals},
      {4, "one-ended certificates", 300, one_ended},
      {5, "pushforward tree", 300, pushforward},
      {6, "cost identities", 60, costs},
      {7, "amalgam split", 300, amalgam_split},
      {8, "co-induction", 60, coinduction},
      {9, "pair witnesses", 600, pair_witnesses},
      {10, "oracle equivalence", 120, oracle_equivalence},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.need(false, std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.need(secs < c.limit, "over the time limit");
    failed += !o.ok;
    std::printf("criterion %d %s: %s (%.2fs of %.0fs) %s\n", c.id, c.name, o.ok ? "PASS" : "FAIL", secs, c.limit,
                o.note.str().c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
