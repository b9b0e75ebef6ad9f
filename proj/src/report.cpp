#include "treelab/report.hpp"

#include <regex>
#include <sstream>

namespace treelab {

Json bounds_json(const MeasureBounds& b) {
  return {{"lower", b.lower.str()}, {"upper", b.upper.str()}, {"gap", b.gap().str()}, {"exact", b.exact()}};
}

Alphabet system_alphabet(const DyadicSystem& sys) { return Alphabet::numbered("h", static_cast<int>(sys.rank())); }

Json constraint_json(const Constraint& c, const Alphabet& letters) {
  return {{"word", letters.format(c.word)}, {"set", c.set ? c.set->name() : ""}, {"negate", c.negate}};
}

Json forest_json(const ForestConfig& cfg) {
  const DualWindow& dw = *cfg.window;
  Alphabet gamma = Alphabet::numbered("g", 2 * dw.p());
  Json verts = Json::array(), interior = Json::array(), edges = Json::array(), present = Json::array();
  for (std::uint32_t v = 0; v < dw.size(); ++v) {
    verts.push_back(gamma.format(dw.trees[v]));
    interior.push_back(dw.interior[v] ? 1 : 0);
  }
  for (std::size_t e = 0; e < dw.edges.size(); ++e) {
    const DualEdge& d = dw.edges[e];
    edges.push_back({d.owner, d.other, d.orbit});
    present.push_back(cfg.present.at(e) ? 1 : 0);
  }
  return {{"schema", kForestSchema}, {"p", dw.p()},         {"seed", cfg.seed},          {"sampled", cfg.sampled},
          {"vertices", verts},       {"interior", interior}, {"edges", edges}, {"present", present}};
}

std::string forest_dot(const Json& f) {
  std::ostringstream out;
  out << "graph forest {\n";
  out << "  schema=\"" << f.at("schema").get<std::string>() << "\";\n";
  out << "  p=" << f.at("p").get<int>() << ";\n";
  out << "  seed=" << f.at("seed").get<std::uint64_t>() << ";\n";
  out << "  sampled=" << (f.at("sampled").get<bool>() ? 1 : 0) << ";\n";
  const Json& verts = f.at("vertices");
  for (std::size_t v = 0; v < verts.size(); ++v)
    out << "  v" << v << " [label=\"" << verts[v].get<std::string>() << "\", interior=" << f.at("interior")[v].get<int>()
        << "];\n";
  const Json& edges = f.at("edges");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    bool on = f.at("present")[e].get<int>() != 0;
    out << "  v" << edges[e][0].get<std::uint32_t>() << " -- v" << edges[e][1].get<std::uint32_t>()
        << " [orbit=" << edges[e][2].get<int>() << ", style=" << (on ? "solid" : "dashed") << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json forest_from_dot(const std::string& dot) {
  static const std::regex attr(R"re(^\s*(schema|p|seed|sampled)=("?)([^";]*)\2;\s*$)re");
  static const std::regex vertex(R"re(^\s*v(\d+) \[label="([^"]*)", interior=(\d)\];\s*$)re");
  static const std::regex edge(R"re(^\s*v(\d+) -- v(\d+) \[orbit=(\d+), style=(solid|dashed)\];\s*$)re");
  Json f = {{"schema", ""}, {"p", 0}, {"seed", 0}, {"sampled", false}, {"vertices", Json::array()},
            {"interior", Json::array()}, {"edges", Json::array()}, {"present", Json::array()}};
  std::istringstream in(dot);
  std::string line;
  bool open = false, closed = false;
  while (std::getline(in, line)) {
    std::smatch m;
    if (line == "graph forest {") {
      open = true;
    } else if (line == "}") {
      closed = true;
    } else if (std::regex_match(line, m, attr)) {
      std::string k = m[1], v = m[3];
      if (k == "schema")
        f["schema"] = v;
      else if (k == "p")
        f["p"] = std::stoi(v);
      else if (k == "seed")
        f["seed"] = std::stoull(v);
      else
        f["sampled"] = v == "1";
    } else if (std::regex_match(line, m, vertex)) {
      if (std::stoul(m[1]) != f["vertices"].size()) throw UsageError("dot vertices out of order");
      f["vertices"].push_back(m[2].str());
      f["interior"].push_back(std::stoi(m[3]));
    } else if (std::regex_match(line, m, edge)) {
      f["edges"].push_back({std::stoul(m[1]), std::stoul(m[2]), std::stoi(m[3])});
      f["present"].push_back(m[4] == "solid" ? 1 : 0);
    } else if (!line.empty()) {
      throw UsageError("unexpected dot line: " + line);
    }
  }
  if (!open || !closed) throw UsageError("not a forest graph");
  return f;
}

std::string marginal_csv(const std::vector<MarginalRow>& rows) {
  std::string out = "edge,lower,upper\n";
  for (const auto& r : rows) out += r.edge + "," + r.bounds.lower.str() + "," + r.bounds.upper.str() + "\n";
  return out;
}

Report::Report(std::string command) : command_(std::move(command)) {}

void Report::check(const std::string& name, bool ok, Json detail, Json counterexample) {
  ++assertions_;
  Json row = {{"name", name}, {"status", ok ? "pass" : "fail"}};
  if (!detail.empty()) row["detail"] = std::move(detail);
  checks_.push_back(std::move(row));
  if (ok) return;
  ++failed_;
  counterexamples_.push_back({{"assertion", name}, {"counterexample", std::move(counterexample)}});
}

void Report::inconclusive(const std::string& name, std::size_t count, std::size_t out_of) {
  inconclusive_ += count;
  inconclusive_rows_.push_back({{"name", name}, {"inconclusive", count}, {"of", out_of}});
}

Json Report::to_json() const {
  return {{"schema", kReportSchema},
          {"command", command_},
          {"parameters", parameters_},
          {"summary",
           {{"assertions", assertions_},
            {"passed", assertions_ - failed_},
            {"failed", failed_},
            {"inconclusive", inconclusive_}}},
          {"assertions", checks_},
          {"inconclusive", inconclusive_rows_},
          {"results", results_},
          {"counterexamples", counterexamples_}};
}

void Report::merge(const Report& o, const std::string& prefix) {
  for (Json row : o.checks_) {
    row["name"] = prefix + "/" + row["name"].get<std::string>();
    checks_.push_back(std::move(row));
  }
  for (Json row : o.counterexamples_) {
    row["assertion"] = prefix + "/" + row["assertion"].get<std::string>();
    counterexamples_.push_back(std::move(row));
  }
  for (Json row : o.inconclusive_rows_) {
    row["name"] = prefix + "/" + row["name"].get<std::string>();
    inconclusive_rows_.push_back(std::move(row));
  }
  assertions_ += o.assertions_;
  failed_ += o.failed_;
  inconclusive_ += o.inconclusive_;
  results_[prefix] = o.results_;
  for (const auto& [k, v] : o.attachments) attachments[prefix + "." + k] = v;
}

}  // namespace treelab
