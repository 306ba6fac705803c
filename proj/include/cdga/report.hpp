#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "cdga/json_io.hpp"

namespace cdga {

// Where an expected value comes from: quoted from the source text, immediate
// from definitions, or computed by an independent derivation.
enum class Provenance { Paper, Trivial, Derived };

inline const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Paper: return "paper";
    case Provenance::Trivial: return "trivial";
    default: return "derived";
  }
}

inline Provenance provenance_parse(const std::string& s) {
  if (s == "paper") return Provenance::Paper;
  if (s == "trivial") return Provenance::Trivial;
  if (s == "derived") return Provenance::Derived;
  throw UsageError("unknown provenance tag '" + s + "'");
}

// One checked statement inside a scenario. details is free-form JSON; on
// failure it carries the minimal counterexample (degree, diagnostics, word).
struct Expectation {
  std::string description;
  Provenance provenance = Provenance::Derived;
  bool pass = false;
  Json details = Json::object();
};

struct ScenarioResult {
  std::string name;
  bool pass = true;
  std::vector<Expectation> expectations;
  Json witnesses = Json::object();
  double ms = 0.0;

  void expect(std::string description, Provenance prov, bool ok,
              Json details = Json::object()) {
    pass = pass && ok;
    expectations.push_back({std::move(description), prov, ok, std::move(details)});
  }
};

struct Report {
  int schema_version = 1;
  std::string field = "q";
  std::string window = "-10:10";
  long long seed = 0;
  std::string bar_convention = "shifted";
  bool pass = true;
  std::vector<ScenarioResult> scenarios;  // sorted by name
};

inline Json expectation_to_json(const Expectation& e) {
  return Json{{"description", e.description},
              {"provenance", provenance_name(e.provenance)},
              {"pass", e.pass},
              {"details", e.details}};
}

inline Json scenario_to_json(const ScenarioResult& s) {
  Json ex = Json::array();
  for (auto& e : s.expectations) ex.push_back(expectation_to_json(e));
  return Json{{"name", s.name},       {"pass", s.pass}, {"expectations", std::move(ex)},
              {"witnesses", s.witnesses}, {"ms", s.ms}};
}

inline Json report_to_json(const Report& r) {
  Json sc = Json::array();
  for (auto& s : r.scenarios) sc.push_back(scenario_to_json(s));
  return Json{{"schema_version", r.schema_version},
              {"field", r.field},
              {"window", r.window},
              {"seed", r.seed},
              {"bar_convention", r.bar_convention},
              {"pass", r.pass},
              {"scenarios", std::move(sc)}};
}

inline Expectation expectation_from_json(const Json& j) {
  Expectation e;
  e.description = j.at("description").get<std::string>();
  e.provenance = provenance_parse(j.at("provenance").get<std::string>());
  e.pass = j.at("pass").get<bool>();
  e.details = j.at("details");
  return e;
}

inline ScenarioResult scenario_from_json(const Json& j) {
  ScenarioResult s;
  s.name = j.at("name").get<std::string>();
  s.pass = j.at("pass").get<bool>();
  for (auto& e : j.at("expectations")) s.expectations.push_back(expectation_from_json(e));
  s.witnesses = j.at("witnesses");
  s.ms = j.at("ms").get<double>();
  return s;
}

inline Report report_from_json(const Json& j) {
  Report r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != 1)
    throw UsageError("unsupported report schema_version " + std::to_string(r.schema_version));
  r.field = j.at("field").get<std::string>();
  r.window = j.at("window").get<std::string>();
  r.seed = j.at("seed").get<long long>();
  r.bar_convention = j.at("bar_convention").get<std::string>();
  r.pass = j.at("pass").get<bool>();
  for (auto& s : j.at("scenarios")) r.scenarios.push_back(scenario_from_json(s));
  return r;
}

// Timing-free view for byte-identity comparisons across runs.
inline Json report_without_timing(Json j) {
  for (auto& s : j.at("scenarios")) s.erase("ms");
  return j;
}

}  // namespace cdga
