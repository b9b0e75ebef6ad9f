#pragma once

#include "treelab/coinduce.hpp"
#include "treelab/constructions.hpp"

#include <map>

namespace treelab {

// u = rep z^m with rep the shortlex-least element of u<z>; z must be
// cyclically reduced.
std::pair<Word, int> split_cyclic_coset(const Word& u, const Word& z);

struct PackingParams {
  int margin = 6;        // positions added on both sides of each window line
  int displacement = 8;  // largest shift of an edge end along its line
};

// Greedy window-scale packing of the "free" maps of a treeing into total
// maps psi_0..psi_{q-1}. Lines are the cosets h<k>; every treeing edge
// between two lines becomes one psi edge between the same lines, its ends
// moved along the lines onto free slots (colour, direction). The "lambda"
// map k is kept, and so are total maps with any other tag.
struct Packing {
  struct Line {
    Word rep;
    bool core = false;  // meets the window ball
    int lo = 0, hi = 0;  // region positions
  };
  Word kappa;  // the lambda edges go h -> h kappa
  std::size_t colors = 0;
  std::vector<Line> lines;
  std::vector<Word> vertices;  // rep kappa^m over the region
  std::vector<std::uint32_t> line_of;
  std::vector<int> position;
  std::vector<std::uint8_t> core;  // vertex of the window ball
  std::unordered_map<Word, std::uint32_t, WordHash> index;
  std::vector<std::vector<std::int32_t>> psi, psi_inv;  // [colour][vertex], -1 if unset
  std::vector<WindowGraph::Edge> tree_edges;   // non-k treeing edges inside the region
  std::vector<WindowGraph::Edge> fixed_edges;  // other total maps
  std::vector<std::string> fixed_labels;       // by fixed map index
  std::size_t displaced = 0;  // edge ends that would move farther than allowed
  int max_displacement = 0;
  std::size_t missing_slots = 0;  // empty (window vertex, slot) pairs
  std::size_t loops = 0;          // treeing edges inside one line

  std::optional<std::uint32_t> find(const Word& h) const;
  std::int32_t kappa_step(std::uint32_t v, int sign) const;
  std::size_t packed_edges() const;
  bool complete() const { return displaced == 0 && missing_slots == 0; }
};

// base: one point per factor of g (the orbit's base point).
Packing pack_treeing(const Graphing<WordGroup>& g, const std::vector<LazyPoint>& base, const BallOf<WordGroup>& window,
                     PackingParams params = {});

struct PairWindowReport {
  std::uint64_t seed = 0;
  Verdict verdict = Verdict::Pass;
  std::string reason;
  std::map<std::string, std::size_t> counts;
};

struct PairWitness {
  std::string kind;  // "surface", "boundary" or "amalgam-coind"
  std::string left, right;  // the two pairs, as text
  int p = 1, r = 0, radius = 0;
  bool heuristic = true;  // the free part comes from the greedy packing
  bool strong = true;     // the Z-parts are the same map
  std::size_t colors = 0;
  MeasureBounds packed_cost{Dyadic(0), Dyadic(0)};
  std::vector<PairWindowReport> windows;

  std::size_t count(Verdict v) const;
  double inconclusive_fraction() const;
  // summed per-window counts
  std::map<std::string, std::size_t> totals() const;
};

enum class PairKind { Surface, Boundary };

// (<k> < F_2p) against (Z < Z * F_2p-1) on orbit windows of the surface
// treeing; Boundary composes both sides with a free factor of rank r.
PairWitness pair_witness_window(PairKind kind, int p, int r, int radius, const std::vector<std::uint64_t>& seeds,
                                PackingParams params = {}, int word_length = 6, std::size_t freeness_points = 8);

// Checks of one packed window; exposed for the tests.
PairWindowReport check_packing(const Graphing<WordGroup>& g, const Packing& pk, const std::vector<LazyPoint>& base,
                               std::uint64_t seed, int word_length, std::size_t freeness_points);

struct AmalgamPairParams {
  int order = 2;               // H = <c^order> is glued to <k>
  int points_radius = 2;       // orbit points sigma(a) x for a in this ball of A1
  int packing_radius = 3;      // window ball of each packed Y-orbit
  int probe_radius = 1;        // points are compared on cosets of this ball
  int max_growth = 4;          // times an orbit's packing ball may grow by one
  int word_length = 6;
  std::size_t freeness_points = 1;
  std::size_t gamma0_points = 200;
  int window_letters = 64;     // coset window of the co-induced action
  PackingParams packing{3, 8};
};

// G = Z: A1 = <c> *_{c^order = k} F_2p acting on the co-induced space, and
// A2 = <c> * F_2p-1 acting through c and the psi maps lifted along the
// evaluation map.
PairWitness amalgam_coind_pair(int p, const std::vector<std::uint64_t>& seeds, const AmalgamPairParams& params = {});

}  // namespace treelab
