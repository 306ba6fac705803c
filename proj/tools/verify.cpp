// Command-line front end: run verification scenarios and emit the JSON
// report. Exit status is 0 exactly when every expectation holds.

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "cdga/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{"exact homotopy checks for curved dg modules"};

  std::vector<std::string> picked;
  bool all = false;
  std::string field = "q";
  std::string window = "-10:10";
  long long seed = 12345;
  std::string report_path;
  std::string convention = "shifted";

  app.add_option("--scenario", picked, "scenario to run (repeatable)");
  app.add_flag("--all", all, "run every known scenario");
  app.add_option("--field", field, "coefficient field: q or fp:P");
  app.add_option("--window", window, "degree window LO:HI for sweeps");
  app.add_option("--seed", seed, "seed for randomized scenarios");
  app.add_option("--report", report_path, "write the JSON report to this file");
  app.add_option("--bar-convention", convention,
                 "side-condition reading for bar checks: strict or shifted");

  CLI11_PARSE(app, argc, argv);

  cdga::ScenarioContext ctx;
  std::vector<std::string> names;
  try {
    ctx.field = cdga::FieldSpec::parse(field);
    auto colon = window.find(':', 1);  // skip a leading minus sign
    if (colon == std::string::npos) throw cdga::UsageError("window must look like LO:HI");
    ctx.window = cdga::Window(std::stoi(window.substr(0, colon)),
                              std::stoi(window.substr(colon + 1)));
    ctx.seed = seed;
    if (convention == "strict") ctx.convention = cdga::BarConvention::Strict;
    else if (convention == "shifted") ctx.convention = cdga::BarConvention::Shifted;
    else throw cdga::UsageError("unknown bar convention '" + convention + "'");

    auto known = cdga::scenario_names();
    if (all) names = known;
    else {
      for (auto& n : picked) {
        if (std::find(known.begin(), known.end(), n) == known.end()) {
          std::string msg = "unknown scenario '" + n + "'; known scenarios:";
          for (auto& k : known) msg += "\n  " + k;
          throw cdga::UsageError(msg);
        }
        names.push_back(n);
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }

  cdga::Report rep;
  try {
    rep = cdga::run_scenarios(names, ctx);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }

  int failed = 0;
  for (auto& s : rep.scenarios) {
    std::cout << (s.pass ? "[PASS] " : "[FAIL] ") << s.name << "  ("
              << s.expectations.size() << " checks, " << s.ms << " ms)" << std::endl;
    if (!s.pass) {
      ++failed;
      for (auto& e : s.expectations)
        if (!e.pass)
          std::cout << "         failed: " << e.description << "  " << e.details.dump()
                    << std::endl;
    }
  }
  if (!rep.scenarios.empty()) {
    if (failed == 0)
      std::cout << "all " << rep.scenarios.size() << " scenarios passed" << std::endl;
    else
      std::cout << failed << " of " << rep.scenarios.size() << " scenarios failed" << std::endl;
  }

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "error: cannot write report to '" << report_path << "'" << std::endl;
      return 2;
    }
    out << cdga::report_to_json(rep).dump(2) << std::endl;
  }

  return rep.pass ? 0 : 1;
}
