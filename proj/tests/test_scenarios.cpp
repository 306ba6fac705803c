#include "doctest.h"

#include "cdga/scenarios.hpp"

using cdga::FieldSpec;
using cdga::Json;
using cdga::Report;
using cdga::ScenarioContext;
using cdga::ScenarioResult;

TEST_CASE("every scenario passes over the rationals with the default context") {
  ScenarioContext ctx;
  Report rep = cdga::run_scenarios(cdga::scenario_names(), ctx);
  CHECK(rep.scenarios.size() == 13);
  for (auto& s : rep.scenarios) {
    CAPTURE(s.name);
    bool all = true;
    for (auto& e : s.expectations) {
      CAPTURE(e.description);
      CHECK(e.pass);
      all = all && e.pass;
    }
    CHECK(s.pass == all);
  }
  CHECK(rep.pass);
  CHECK(rep.field == "q");
  CHECK(rep.seed == 12345);
}

TEST_CASE("scenario list comes back sorted and deduplicated") {
  ScenarioContext ctx;
  Report rep = cdga::run_scenarios({"ku-cocycle", "axioms-sweep", "ku-cocycle"}, ctx);
  REQUIRE(rep.scenarios.size() == 2);
  CHECK(rep.scenarios[0].name == "axioms-sweep");
  CHECK(rep.scenarios[1].name == "ku-cocycle");

  auto names = cdga::scenario_names();
  CHECK(std::is_sorted(names.begin(), names.end()));
}

TEST_CASE("identical runs agree byte for byte once timing is stripped") {
  ScenarioContext ctx;
  std::vector<std::string> subset{"lemindec-random", "homotopy-forget", "liftgoed-hom"};
  Json a = cdga::report_to_json(cdga::run_scenarios(subset, ctx));
  Json b = cdga::report_to_json(cdga::run_scenarios(subset, ctx));
  CHECK(cdga::report_without_timing(a).dump() == cdga::report_without_timing(b).dump());
}

TEST_CASE("changing the seed changes random fixtures but not verdicts") {
  ScenarioContext ctx;
  ctx.seed = 777;
  Report rep = cdga::run_scenarios({"lemindec-random", "homotopy-forget"}, ctx);
  CHECK(rep.pass);
  CHECK(rep.seed == 777);
}

TEST_CASE("unknown scenario names are rejected") {
  ScenarioContext ctx;
  CHECK_THROWS_AS(cdga::run_scenario("no-such-scenario", ctx), cdga::UsageError);
}

TEST_CASE("an empty scenario list yields an empty passing report") {
  ScenarioContext ctx;
  Report rep = cdga::run_scenarios({}, ctx);
  CHECK(rep.scenarios.empty());
  CHECK(rep.pass);
}

TEST_CASE("the portable scenarios hold over F_5 as well") {
  ScenarioContext ctx;
  ctx.field = FieldSpec::prime_field(5);
  Report rep = cdga::run_scenarios(
      {"prop-2.2-sweep", "derivedzero-ses", "prophor-cone", "lemindec-random"}, ctx);
  for (auto& s : rep.scenarios) {
    CAPTURE(s.name);
    CHECK(s.pass);
  }
  CHECK(rep.pass);
  CHECK(rep.field == "fp:5");
}
