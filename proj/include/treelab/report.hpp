#pragma once

#include "treelab/forest.hpp"
#include "treelab/graphing.hpp"

#include "json.hpp"

namespace treelab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "treelab.report/1";
inline constexpr const char* kForestSchema = "treelab.forest/1";

Json bounds_json(const MeasureBounds& b);
Json constraint_json(const Constraint& c, const Alphabet& letters);

// Letters of the forest system's free group.
Alphabet system_alphabet(const DyadicSystem& sys);

template <GroupModel M>
Json graphing_json(const Graphing<M>& g, const CostValue& c) {
  Json maps = Json::array();
  for (std::size_t k = 0; k < g.maps.size(); ++k) {
    const auto& m = g.maps[k];
    Json dom = Json::array();
    for (const auto& dc : m.domain) {
      Json e = constraint_json(dc.constraint, system_alphabet(*g.factors.at(dc.factor).system));
      e["factor"] = g.factors.at(dc.factor).name;
      dom.push_back(std::move(e));
    }
    maps.push_back({{"label", m.label},
                    {"tag", m.tag},
                    {"mover", g.group->format(m.mover)},
                    {"domain", std::move(dom)},
                    {"measure", bounds_json(c.per_map.at(k))}});
  }
  Json factors = Json::array();
  for (const auto& f : g.factors) factors.push_back({{"name", f.name}, {"system", f.system->name}});
  return {{"factors", std::move(factors)}, {"maps", std::move(maps)}, {"cost", bounds_json(c.total)}};
}

// Undirected forest window: tree coordinates, edges (owner, other, orbit)
// and presence. The orientation is not serialized.
Json forest_json(const ForestConfig& cfg);
std::string forest_dot(const Json& forest);
Json forest_from_dot(const std::string& dot);

struct MarginalRow {
  std::string edge;
  MeasureBounds bounds;
};
std::string marginal_csv(const std::vector<MarginalRow>& rows);

// Assertions are aggregated: each carries its own counts and, when it
// fails, one counterexample.
class Report {
 public:
  explicit Report(std::string command);

  Json& parameters() { return parameters_; }
  Json& results() { return results_; }
  void check(const std::string& name, bool ok, Json detail = Json::object(), Json counterexample = nullptr);
  // inconclusive outcomes are counted apart from failures
  void inconclusive(const std::string& name, std::size_t count, std::size_t out_of);

  std::size_t assertions() const { return assertions_; }
  std::size_t failed() const { return failed_; }
  std::size_t inconclusive_count() const { return inconclusive_; }
  const Json& counterexamples() const { return counterexamples_; }

  // extra output files by suffix ("csv", "dot", "forest.json")
  std::map<std::string, std::string> attachments;

  Json to_json() const;
  // absorbs another report's assertions under a prefix
  void merge(const Report& other, const std::string& prefix);

 private:
  std::string command_;
  Json parameters_ = Json::object();
  Json results_ = Json::object();
  Json checks_ = Json::array();
  Json counterexamples_ = Json::array();
  Json inconclusive_rows_ = Json::array();
  std::size_t assertions_ = 0, failed_ = 0, inconclusive_ = 0;
};

}  // namespace treelab
