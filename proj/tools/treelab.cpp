#include "treelab/scenario.hpp"

#include "CLI11.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace treelab;
namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw Error("cannot write " + path.string());
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"treelab: measurable free factors and treeings at window scale"};
  Scenario s;
  std::string command, seeds, out = "treelab-out", scenario_file;
  app.add_option("command", command, "scenario to run")->check(CLI::IsMember(scenario_commands()));
  auto* o_p = app.add_option("--p", s.p, "genus p");
  auto* o_n = app.add_option("--n", s.n, "number of amalgamated copies");
  auto* o_r = app.add_option("--r", s.r, "rank of the extra free factor (pair)");
  auto* o_radius = app.add_option("--radius", s.radius, "window radius (command default if omitted)");
  auto* o_seeds = app.add_option("--seeds", seeds, "N, a:b or a comma list of both");
  auto* o_trunc = app.add_option("--trunc", s.trunc, "truncation level");
  app.add_option("--out", out, "output directory");
  auto* o_format = app.add_option("--format", s.formats, "json, csv, dot")->delimiter(',');
  app.add_option("--scenario", scenario_file, "scenario as a JSON document");
  app.set_config("--config", "", "key = value file mirroring the flags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  Report rep("");
  try {
    if (!scenario_file.empty()) {
      Scenario base = scenario_from_json(read_json(scenario_file));
      if (command.empty()) command = base.command;
      if (!o_p->count()) s.p = base.p;
      if (!o_n->count()) s.n = base.n;
      if (!o_r->count()) s.r = base.r;
      if (!o_radius->count()) s.radius = base.radius;
      if (!o_trunc->count()) s.trunc = base.trunc;
      if (!o_format->count()) s.formats = base.formats;
      if (!o_seeds->count()) s.seeds = base.seeds;
    }
    if (command.empty()) throw UsageError("no command given");
    s.command = command;
    if (o_seeds->count()) s.seeds = parse_seeds(seeds);
    if (std::find(s.formats.begin(), s.formats.end(), "json") == s.formats.end()) s.formats.push_back("json");
    s.threads = thread_cap();
    validate(s);
    rep = run_scenario(s);
  } catch (const UsageError& e) {
    std::cerr << "treelab: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "treelab: " << e.what() << "\n";
    return 3;
  }

  try {
    fs::create_directories(out);
    fs::path dir(out);
    Json doc = rep.to_json();
    write_file(dir / (command + ".json"), doc.dump(2) + "\n");
    for (const auto& [suffix, text] : rep.attachments) write_file(dir / (command + "." + suffix), text);
    if (rep.failed()) {
      Json cex = {{"schema", kReportSchema}, {"command", command}, {"counterexamples", rep.counterexamples()}};
      write_file(dir / (command + ".counterexample.json"), cex.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "treelab: " << e.what() << "\n";
    return 3;
  }
  std::cout << command << ": " << rep.assertions() << " assertions, " << rep.failed() << " failed, "
            << rep.inconclusive_count() << " inconclusive -> " << (fs::path(out) / (command + ".json")).string() << "\n";
  return rep.failed() ? 1 : 0;
}
