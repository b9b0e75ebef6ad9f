#include "treelab/scenario.hpp"

#include "treelab/coinduce.hpp"
#include "treelab/constructions.hpp"
#include "treelab/pairs.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

namespace treelab {

const std::vector<std::string>& scenario_commands() {
  static const std::vector<std::string> c{"forest-sample", "treeing-cost", "amalgam", "coinduce", "pair", "verify-all"};
  return c;
}

std::vector<std::uint64_t> parse_seeds(const std::string& text) {
  std::vector<std::uint64_t> out;
  auto number = [&](const std::string& s) -> std::uint64_t {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad seed list '" + text + "'");
    return std::stoull(s);
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string part = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t colon = part.find(':');
    if (colon == std::string::npos) {
      std::uint64_t n = number(part);
      for (std::uint64_t s = 0; s < n; ++s) out.push_back(s);
    } else {
      std::uint64_t a = number(part.substr(0, colon)), b = number(part.substr(colon + 1));
      if (b < a) throw UsageError("empty seed range '" + part + "'");
      for (std::uint64_t s = a; s < b; ++s) out.push_back(s);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw UsageError("empty seed list '" + text + "'");
  return out;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  try {
    s.command = j.at("command").get<std::string>();
    if (j.contains("p")) s.p = j["p"].get<int>();
    if (j.contains("n")) s.n = j["n"].get<int>();
    if (j.contains("r")) s.r = j["r"].get<int>();
    if (j.contains("radius")) s.radius = j["radius"].get<int>();
    if (j.contains("trunc")) s.trunc = j["trunc"].get<int>();
    if (j.contains("seeds")) {
      if (j["seeds"].is_string())
        s.seeds = parse_seeds(j["seeds"].get<std::string>());
      else
        s.seeds = j["seeds"].get<std::vector<std::uint64_t>>();
    }
    if (j.contains("format")) s.formats = j["format"].get<std::vector<std::string>>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad scenario document: ") + e.what());
  }
  return s;
}

void validate(const Scenario& s) {
  const auto& cmds = scenario_commands();
  if (std::find(cmds.begin(), cmds.end(), s.command) == cmds.end()) throw UsageError("unknown command '" + s.command + "'");
  if (s.p < 1 || s.p > 8) throw UsageError("p must be in 1..8");
  if (s.n < 1 || s.n > 8) throw UsageError("n must be in 1..8");
  if (s.r < 0 || s.r > 8) throw UsageError("r must be in 0..8");
  if (s.radius > 12) throw UsageError("radius must be <= 12");
  if (s.trunc < 8 || s.trunc > 200) throw UsageError("trunc must be in 8..200");
  for (const auto& f : s.formats) {
    if (f != "json" && f != "csv" && f != "dot") throw UsageError("unknown format '" + f + "'");
    if (f == "dot" && s.command != "forest-sample" && s.command != "verify-all")
      throw UsageError("dot output is only produced for forests");
  }
  if (s.threads < 1) throw UsageError("threads must be >= 1");
}

std::size_t thread_cap() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TREELAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end || v < 1) throw UsageError("TREELAB_THREADS must be a positive integer");
    return static_cast<std::size_t>(v);
  }
  return hw;
}

namespace {

bool wants(const Scenario& s, const std::string& f) {
  return std::find(s.formats.begin(), s.formats.end(), f) != s.formats.end();
}

int radius_or(const Scenario& s, int fallback) { return s.radius < 0 ? fallback : s.radius; }

std::vector<std::uint64_t> seeds_or(const Scenario& s, std::size_t fallback) {
  if (!s.seeds.empty()) return s.seeds;
  std::vector<std::uint64_t> out(fallback);
  for (std::size_t i = 0; i < fallback; ++i) out[i] = i;
  return out;
}

Json seeds_json(const std::vector<std::uint64_t>& seeds) {
  // contiguous ranges stay short in the report
  bool contiguous = true;
  for (std::size_t i = 1; i < seeds.size(); ++i) contiguous = contiguous && seeds[i] == seeds[i - 1] + 1;
  if (contiguous && !seeds.empty()) return std::to_string(seeds.front()) + ":" + std::to_string(seeds.back() + 1);
  return seeds;
}

void stamp(Report& rep, const Scenario& s, const std::vector<std::uint64_t>& seeds, Json extra) {
  Json& prm = rep.parameters();
  for (auto& [k, v] : extra.items()) prm[k] = v;
  prm["seeds"] = seeds_json(seeds);
  prm["trunc"] = s.trunc;
}

std::string bound_text(const MeasureBounds& b) { return "[" + b.lower.str() + ", " + b.upper.str() + "]"; }

std::string bounds_csv(const std::string& key, const std::vector<MarginalRow>& rows) {
  std::string out = marginal_csv(rows);
  return key + out.substr(out.find(','));
}

Report forest_sample_report(const Scenario& s) {
  const int radius = radius_or(s, 6);
  const auto seeds = seeds_or(s, 1000);
  Report rep("forest-sample");
  stamp(rep, s, seeds, {{"p", s.p}, {"radius", radius}});
  DyadicSystem sys = forest_dynamics(s.p);
  auto dw = std::make_shared<const DualWindow>(dual_ball(std::make_shared<const SurfaceComplex>(s.p), radius));

  auto reports = parallel_map<OneEndedReport>(seeds.size(), s.threads, [&](std::size_t i) {
    return check_one_ended(forest_sample(sys, seeds[i], dw), sys, sample_point(seeds[i]));
  });
  std::size_t interior = 0, chains = 0, outdeg = 0, two = 0, level = 0, bad = 0;
  Json cex = nullptr;
  Alphabet gamma = Alphabet::numbered("g", 2 * s.p);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    interior += r.interior_checked;
    chains += r.chains_checked;
    outdeg += r.outdegree_violations;
    two += r.two_cycles;
    level += r.level_violations;
    if (r.ok()) continue;
    ++bad;
    if (cex.is_null()) {
      Json path = Json::array();
      for (auto v : r.counterexample) path.push_back(gamma.format(dw->trees[v]));
      cex = {{"seed", seeds[i]}, {"path", path}};
    }
  }
  rep.results()["window"] = {{"vertices", dw->size()},
                             {"edges", dw->edges.size()},
                             {"interior_degree", dw->observed_interior_degree},
                             {"degree_regular", dw->degree_regular}};
  rep.results()["one_ended"] = {{"samples", seeds.size()},     {"interior_checked", interior},
                                {"chains_checked", chains},    {"outdegree_violations", outdeg},
                                {"two_cycles", two},           {"level_violations", level},
                                {"violating_samples", bad}};
  rep.check("one-ended certificates", bad == 0, {{"violations", outdeg + two + level}}, cex);

  std::vector<MarginalRow> rows;
  MeasureBounds sum{Dyadic(0), Dyadic(0)};
  Json marg = Json::array();
  for (int j = 1; j <= 2 * s.p; ++j) {
    MeasureBounds b = edge_marginal(sys, Word{}, j, s.trunc);
    std::string id = "e" + std::to_string(j) + "*";
    rows.push_back({id, b});
    sum += b;
    Dyadic want = j <= 2 ? Dyadic::pow2(-1) : Dyadic(0);
    marg.push_back({{"edge", id}, {"bounds", bounds_json(b)}});
    rep.check("marginal " + id, b.exact() && b.lower == want, {{"bounds", bound_text(b)}, {"expected", want.str()}});
  }
  rep.results()["marginals"] = std::move(marg);
  rep.check("marginals sum to 1", sum.exact() && sum.lower == Dyadic(1), {{"sum", bound_text(sum)}});

  if (wants(s, "csv")) rep.attachments["csv"] = marginal_csv(rows);
  if (wants(s, "dot") && !seeds.empty()) {
    Json f = forest_json(forest_sample(sys, seeds.front(), dw));
    rep.attachments["dot"] = forest_dot(f);
    rep.attachments["forest.json"] = f.dump(2) + "\n";
  }
  return rep;
}

template <GroupModel M>
Json cycle_json(const OrbitWindow<M>& w, const M& group, const TreeingReport& t) {
  Json path = Json::array();
  for (auto v : t.cycle) path.push_back(group.format(w.ball->vertices[v]));
  return {{"seed", w.seed}, {"cycle", path}};
}

struct WindowTally {
  std::size_t fail = 0, inconclusive = 0;
  Json cex = nullptr;
};

template <GroupModel M>
WindowTally tally_treeing(const std::vector<OrbitWindow<M>>& ws, const std::vector<TreeingReport>& rs, const M& g) {
  WindowTally t;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].verdict == Verdict::Inconclusive) ++t.inconclusive;
    if (rs[i].verdict != Verdict::Fail) continue;
    ++t.fail;
    if (t.cex.is_null()) t.cex = cycle_json(ws[i], g, rs[i]);
  }
  return t;
}

std::vector<MarginalRow> map_rows(const std::vector<std::string>& labels, const CostValue& c) {
  std::vector<MarginalRow> rows;
  for (std::size_t k = 0; k < labels.size(); ++k) rows.push_back({labels[k], c.per_map[k]});
  rows.push_back({"total", c.total});
  return rows;
}

Report treeing_cost_report(const Scenario& s) {
  const int radius = radius_or(s, 3);
  const auto seeds = seeds_or(s, 20);
  Report rep("treeing-cost");
  stamp(rep, s, seeds, {{"p", s.p}, {"radius", radius}});
  Graphing<WordGroup> g = surface_treeing(s.p);
  CostValue c = cost(g, s.trunc);
  rep.results()["graphing"] = graphing_json(g, c);
  const Dyadic want(2 * s.p), gap = Dyadic::pow2(-(s.trunc - 4));
  rep.check("cost brackets 2p", c.total.contains(want) && c.total.gap() <= gap,
            {{"bounds", bound_text(c.total)}, {"expected", want.str()}, {"gap_limit", gap.str()}});
  bool total = false;
  for (const auto& m : g.maps) total = total || (m.tag == "lambda" && m.domain.empty());
  rep.check("k map is total", total);

  auto ball = std::make_shared<const BallOf<WordGroup>>(build_ball(*g.group, radius));
  auto ws = parallel_map<OrbitWindow<WordGroup>>(seeds.size(), s.threads,
                                                 [&](std::size_t i) { return orbit_window(g, ball, seeds[i]); });
  std::vector<TreeingReport> rs;
  for (const auto& w : ws) rs.push_back(verify_treeing(w.graph));
  WindowTally t = tally_treeing(ws, rs, *g.group);
  rep.results()["windows"] = {{"count", ws.size()}, {"vertices", ball->size()}, {"failed", t.fail}, {"inconclusive", t.inconclusive}};
  rep.check("windows are acyclic", t.fail == 0, {{"windows", ws.size()}}, t.cex);
  rep.inconclusive("windows are acyclic", t.inconclusive, ws.size());

  // the kept subgraph of sampled forests on the primal complex; a full cell
  // needs radius 2p, and beyond p = 2 that window passes the vertex cap
  if (s.p <= 2) {
    const int primal_radius = std::max(radius, 2 * s.p);
    auto complex = std::make_shared<const SurfaceComplex>(s.p);
    auto cw = std::make_shared<const CayleyWindow>(cayley_window(surface_presentation(s.p), primal_radius));
    auto dw = std::make_shared<const DualWindow>(dual_window(complex, *cw));
    DyadicSystem sys = forest_dynamics(s.p);
    auto hs = parallel_map<SpanningSubgraph>(seeds.size(), s.threads, [&](std::size_t i) {
      return pushforward_tree(forest_sample(sys, seeds[i], dw), cw);
    });
    std::size_t kk = 0, ke = 0, bush = 0, rec = 0, cyc = 0, bad = 0;
    Json cex = nullptr;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const auto& h = hs[i];
      kk += h.kappa_kept;
      ke += h.kappa_edges;
      bush += h.interior_bush;
      rec += h.reconnected;
      cyc += h.treeing.verdict == Verdict::Fail;
      if (h.ok()) continue;
      ++bad;
      if (cex.is_null()) cex = {{"seed", seeds[i]}, {"unreconnected_edges", h.unreconnected}};
    }
    rep.results()["pushforward"] = {{"samples", hs.size()},      {"primal_radius", primal_radius},
                                    {"kappa_edges", ke},         {"kappa_kept", kk},
                                    {"interior_bush_edges", bush}, {"reconnected", rec},
                                    {"interior_cycles", cyc}};
    rep.check("pushforward keeps k-edges, is acyclic and reconnects bushes", bad == 0, {{"samples", hs.size()}}, cex);
  } else {
    rep.results()["pushforward"] = "skipped: a window holding a full cell exceeds the vertex cap";
  }
  std::vector<std::string> labels;
  for (const auto& m : g.maps) labels.push_back(m.label);
  if (wants(s, "csv")) rep.attachments["csv"] = bounds_csv("map", map_rows(labels, c));
  return rep;
}

Report amalgam_report(const Scenario& s) {
  const int radius = radius_or(s, 3);
  const auto seeds = seeds_or(s, 10);
  const std::size_t chains = 100;
  Report rep("amalgam");
  stamp(rep, s, seeds, {{"n", s.n}, {"p", s.p}, {"radius", radius}, {"chains_per_copy", chains}});
  Graphing<AmalgamGroup> g = assemble_amalgam_treeing(s.n, s.p);
  CostValue c = cost(g, s.trunc);
  rep.results()["graphing"] = graphing_json(g, c);
  const Dyadic want(1 + s.n * (2 * s.p - 1)), gap = Dyadic::pow2(-(s.trunc - 4));
  rep.check("cost brackets 1 + n(2p-1)", c.total.contains(want) && c.total.gap() <= gap,
            {{"bounds", bound_text(c.total)}, {"expected", want.str()}, {"gap_limit", gap.str()}});
  rep.check("map families", g.maps.size() == static_cast<std::size_t>(1 + 2 * s.n * s.p),
            {{"maps", g.maps.size()}, {"expected", 1 + 2 * s.n * s.p}});

  auto ball = std::make_shared<const BallOf<AmalgamGroup>>(build_ball(*g.group, radius));
  auto ws = parallel_map<OrbitWindow<AmalgamGroup>>(seeds.size(), s.threads,
                                                    [&](std::size_t i) { return orbit_window(g, ball, seeds[i]); });
  std::vector<TreeingReport> rs;
  for (const auto& w : ws) rs.push_back(verify_treeing(w.graph));
  WindowTally t = tally_treeing(ws, rs, *g.group);
  rep.check("windows are acyclic", t.fail == 0, {{"windows", ws.size()}}, t.cex);
  rep.inconclusive("windows are acyclic", t.inconclusive, ws.size());

  auto splits = parallel_map<std::vector<SplitReport>>(ws.size(), s.threads, [&](std::size_t i) {
    std::vector<SplitReport> out;
    for (int copy = 1; copy <= s.n; ++copy)
      out.push_back(amalgam_split_check(ws[i], g, copy, chains, derive_seed(seeds[i], 0x5911 + copy)));
    return out;
  });
  std::size_t sampled = 0, closed = 0, fails = 0, inc = 0;
  Json cex = nullptr;
  for (std::size_t i = 0; i < splits.size(); ++i)
    for (std::size_t k = 0; k < splits[i].size(); ++k) {
      const SplitReport& r = splits[i][k];
      sampled += r.chains_sampled;
      closed += r.chains_closed;
      inc += r.verdict == Verdict::Inconclusive;
      if (r.verdict != Verdict::Fail) continue;
      ++fails;
      if (cex.is_null()) {
        Json chain = Json::array();
        for (auto v : r.chain) chain.push_back(g.group->format(ws[i].ball->vertices[v]));
        cex = {{"seed", seeds[i]}, {"copy", k + 1}, {"chain", chain}};
      }
    }
  rep.results()["windows"] = {{"count", ws.size()}, {"vertices", ball->size()}, {"failed", t.fail}, {"inconclusive", t.inconclusive}};
  rep.results()["split"] = {{"chains_sampled", sampled}, {"chains_closed", closed}, {"failed_checks", fails}};
  rep.check("amalgam split on sampled chains", fails == 0, {{"chains_sampled", sampled}}, cex);
  rep.inconclusive("amalgam split on sampled chains", inc, splits.size() * static_cast<std::size_t>(s.n));
  std::vector<std::string> labels;
  for (const auto& m : g.maps) labels.push_back(m.label);
  if (wants(s, "csv")) rep.attachments["csv"] = bounds_csv("map", map_rows(labels, c));
  return rep;
}

Word random_free_word(std::mt19937_64& rng, int rank, int max_len) {
  std::vector<Letter> ls;
  int n = static_cast<int>(rng() % static_cast<unsigned>(max_len + 1));
  for (int i = 0; i < n; ++i) ls.push_back(gen_letter(static_cast<int>(rng() % rank), rng() % 2 ? 1 : -1));
  return Word(ls);
}

std::shared_ptr<const DyadicSet> random_union(std::mt19937_64& rng) {
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

struct OdometerTally {
  std::size_t law = 0, escapes = 0, law_bad = 0, equiv = 0, equiv_bad = 0, cylinders = 0, cyl_bad = 0;
  Json cex = nullptr;
};

Json pair_json(const PairWitness& pw) {
  Json ws = Json::array();
  for (const auto& w : pw.windows) {
    Json counts = Json::object();
    for (const auto& [k, v] : w.counts) counts[k] = v;
    ws.push_back({{"seed", w.seed}, {"verdict", verdict_name(w.verdict)}, {"reason", w.reason}, {"counts", counts}});
  }
  Json totals = Json::object();
  for (const auto& [k, v] : pw.totals()) totals[k] = v;
  return {{"kind", pw.kind},
          {"left", pw.left},
          {"right", pw.right},
          {"p", pw.p},
          {"r", pw.r},
          {"radius", pw.radius},
          {"heuristic", pw.heuristic},
          {"strong", pw.strong},
          {"scale", "window-scale"},
          {"colors", pw.colors},
          {"packed_cost", bounds_json(pw.packed_cost)},
          {"pass", pw.count(Verdict::Pass)},
          {"fail", pw.count(Verdict::Fail)},
          {"inconclusive", pw.count(Verdict::Inconclusive)},
          {"totals", totals},
          {"windows", ws}};
}

std::string windows_csv(const PairWitness& pw) {
  std::string out = "seed,verdict,reason\n";
  for (const auto& w : pw.windows) out += std::to_string(w.seed) + "," + verdict_name(w.verdict) + "," + w.reason + "\n";
  return out;
}

// one witness per seed, seed-ordered
template <class F>
PairWitness merged_witness(const std::vector<std::uint64_t>& seeds, std::size_t threads, F run) {
  auto parts = parallel_map<PairWitness>(seeds.size(), threads, [&](std::size_t i) { return run(seeds[i]); });
  PairWitness pw = parts.empty() ? run(0) : parts.front();
  pw.windows.clear();
  for (auto& part : parts)
    for (auto& w : part.windows) pw.windows.push_back(std::move(w));
  return pw;
}

void witness_checks(Report& rep, const std::string& name, const PairWitness& pw) {
  Json cex = nullptr;
  for (const auto& w : pw.windows)
    if (w.verdict == Verdict::Fail && cex.is_null()) {
      Json counts = Json::object();
      for (const auto& [k, v] : w.counts) counts[k] = v;
      cex = {{"seed", w.seed}, {"reason", w.reason}, {"counts", counts}};
    }
  rep.check(name + ": no failed window", pw.count(Verdict::Fail) == 0, {{"windows", pw.windows.size()}}, cex);
  rep.inconclusive(name, pw.count(Verdict::Inconclusive), pw.windows.size());
  rep.check(name + ": packed cost brackets 2p-1", pw.packed_cost.contains(Dyadic(2 * pw.p - 1)),
            {{"bounds", bound_text(pw.packed_cost)}});
  rep.check(name + ": strong", pw.strong);
}

Report coinduce_report(const Scenario& s) {
  const int radius = radius_or(s, 6);
  const auto seeds = seeds_or(s, 4);
  const std::size_t per_seed = 250;
  Report rep("coinduce");
  stamp(rep, s, seeds, {{"p", s.p}, {"radius", radius}, {"pairs_per_seed", per_seed}});

  auto act = odometer_coinduction(radius);
  const DyadicSystem& sys = *act.base().system;
  Alphabet st({"s", "t"});
  auto tallies = parallel_map<OdometerTally>(seeds.size(), s.threads, [&](std::size_t i) {
    OdometerTally t;
    std::mt19937_64 rng(derive_seed(seeds[i], 0xC0D));
    for (std::size_t k = 0; k < per_seed; ++k) {
      Word a1 = random_free_word(rng, 2, 3), a2 = random_free_word(rng, 2, 3);
      std::vector<Word> keys;
      for (int j = 0; j < 4; ++j) keys.push_back(act.model().key(random_free_word(rng, 2, 2)));
      auto f = act.sample(rng());
      try {
        auto lhs = act.act(a1, act.act(a2, f, act.sources(a1, keys)), keys);
        auto rhs = act.act(a1 * a2, f, keys);
        ++t.law;
        for (const Word& h : keys)
          if (!(lhs.coords.at(h) == rhs.coords.at(h))) {
            ++t.law_bad;
            if (t.cex.is_null()) t.cex = {{"seed", seeds[i]}, {"a1", st.format(a1)}, {"a2", st.format(a2)}, {"coset", st.format(h)}};
          }
      } catch (const WindowError&) {
        ++t.escapes;
      }
      Word b = Word::letter(0).power(static_cast<int>(rng() % 9) - 4);
      auto g = act.act(b, f, {Word{}});
      ++t.equiv;
      if (!(act.evaluate(g) == act.base().act(act.model().to_b(b), act.evaluate(f)))) ++t.equiv_bad;
      // a cylinder and its image have one measure
      Word a = random_free_word(rng, 2, 3);
      Cylinder<Word> c;
      for (int j = 0; j < 2; ++j)
        c.push_back({act.model().key(random_free_word(rng, 2, 2)), {random_free_word(rng, 1, 3), random_union(rng), false}});
      try {
        ++t.cylinders;
        if (!(cylinder_measure<Word, WordHash>(sys, act.pullback(a, c), s.trunc) ==
              cylinder_measure<Word, WordHash>(sys, c, s.trunc)))
          ++t.cyl_bad;
      } catch (const WindowError&) {
        --t.cylinders;
      }
    }
    return t;
  });
  OdometerTally all;
  for (const auto& t : tallies) {
    all.law += t.law;
    all.escapes += t.escapes;
    all.law_bad += t.law_bad;
    all.equiv += t.equiv;
    all.equiv_bad += t.equiv_bad;
    all.cylinders += t.cylinders;
    all.cyl_bad += t.cyl_bad;
    if (all.cex.is_null()) all.cex = t.cex;
  }
  rep.results()["odometer"] = {{"action_law_pairs", all.law},       {"window_escapes", all.escapes},
                               {"equivariance_checks", all.equiv},   {"cylinders", all.cylinders}};
  rep.check("action law", all.law_bad == 0 && all.law > 0, {{"pairs", all.law}}, all.cex);
  rep.check("evaluation is B-equivariant", all.equiv_bad == 0, {{"checks", all.equiv}});
  rep.check("cylinder measure preserved", all.cyl_bad == 0, {{"cylinders", all.cylinders}});

  Word t = Word::letter(1);
  auto half = std::make_shared<const DyadicSet>("L", std::vector<Pattern>{Pattern::cylinder("0")});
  Cylinder<Word> quarter{{Word{}, {Word{}, half, false}}, {t, {Word{}, half, false}}};
  MeasureBounds mq = cylinder_measure<Word, WordHash>(sys, quarter, s.trunc);
  MeasureBounds mi = cylinder_measure<Word, WordHash>(sys, act.image(t, quarter), s.trunc);
  rep.check("two-coordinate cylinder and its t-image", mq == MeasureBounds{Dyadic::pow2(-2), Dyadic::pow2(-2)} && mi == mq,
            {{"cylinder", bound_text(mq)}, {"image", bound_text(mi)}});

  auto twisted = odometer_coinduction(radius, 3);
  std::mt19937_64 rng(derive_seed(seeds.empty() ? 0 : seeds.front(), 0x5EC));
  std::size_t same = 0, differing = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<std::pair<Word, std::shared_ptr<const DyadicSet>>> events;
    int k = 1 + static_cast<int>(rng() % 4);
    for (int j = 0; j < k; ++j) events.push_back({random_free_word(rng, 2, 4), random_union(rng)});
    auto c0 = act.psi_cylinder(events), c1 = twisted.psi_cylinder(events);
    for (std::size_t j = 0; j < c0.size(); ++j) differing += !(c0[j].constraint.word == c1[j].constraint.word);
    same += cylinder_measure<Word, WordHash>(sys, c0, s.trunc) == cylinder_measure<Word, WordHash>(sys, c1, s.trunc);
  }
  rep.check("cylinder measures do not depend on the section", same == 100,
            {{"cylinders", 100}, {"equal", same}, {"differing_constraints", differing}});

  PairWitness pw = merged_witness(seeds, s.threads, [&](std::uint64_t seed) { return amalgam_coind_pair(s.p, {seed}); });
  rep.results()["amalgam_pair"] = pair_json(pw);
  witness_checks(rep, "amalgam co-induced pair", pw);
  auto tot = pw.totals();
  rep.check("amalgam co-induced pair: lifted k is c^-2", tot["gamma0_checks"] > 0, {{"checks", tot["gamma0_checks"]}});
  if (wants(s, "csv")) rep.attachments["csv"] = windows_csv(pw);
  return rep;
}

Report pair_report(const Scenario& s) {
  const int radius = radius_or(s, 3);
  const auto seeds = seeds_or(s, 20);
  Report rep("pair");
  PairKind kind = s.r == 0 ? PairKind::Surface : PairKind::Boundary;
  stamp(rep, s, seeds, {{"p", s.p}, {"r", s.r}, {"radius", radius}});
  PairWitness pw = merged_witness(seeds, s.threads, [&](std::uint64_t seed) {
    return pair_witness_window(kind, s.p, s.r, radius, {seed});
  });
  rep.results()["pair"] = pair_json(pw);
  witness_checks(rep, pw.kind + " pair", pw);
  if (wants(s, "csv")) rep.attachments["csv"] = windows_csv(pw);
  return rep;
}

Report verify_all_report(const Scenario& s) {
  Report rep("verify-all");
  rep.parameters() = {{"p", s.p}, {"n", s.n}, {"r", s.r}, {"trunc", s.trunc}};
  auto sub = [&](const std::string& cmd, int radius, std::size_t seeds) {
    Scenario t = s;
    t.command = cmd;
    t.radius = s.radius < 0 ? radius : s.radius;
    if (s.seeds.empty()) t.seeds = seeds_or(t, seeds);
    t.formats.clear();
    for (const auto& f : s.formats)
      if (f != "dot" || cmd == "forest-sample") t.formats.push_back(f);
    return run_scenario(t);
  };
  rep.merge(sub("forest-sample", 4, 100), "forest-sample");
  rep.merge(sub("treeing-cost", 3, 10), "treeing-cost");
  rep.merge(sub("amalgam", 3, 4), "amalgam");
  rep.merge(sub("pair", 3, 10), "pair");
  rep.merge(sub("coinduce", 6, 2), "coinduce");
  return rep;
}

}  // namespace

Report run_scenario(const Scenario& s) {
  validate(s);
  if (s.command == "forest-sample") return forest_sample_report(s);
  if (s.command == "treeing-cost") return treeing_cost_report(s);
  if (s.command == "amalgam") return amalgam_report(s);
  if (s.command == "coinduce") return coinduce_report(s);
  if (s.command == "pair") return pair_report(s);
  return verify_all_report(s);
}

}  // namespace treelab
