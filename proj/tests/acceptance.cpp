// Acceptance checklist: one line per criterion, nonzero exit when any fails.
// Criteria 1-10 run over the rationals with the default seed; criterion 11
// repeats the field-portable ones over F_5 and demands identical verdicts.

#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "cdga/scenarios.hpp"

namespace {

int failures = 0;

void line(int n, bool ok, const std::string& text) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": " << text << std::endl;
  if (!ok) ++failures;
}

bool same_verdicts(const cdga::ScenarioResult& a, const cdga::ScenarioResult& b) {
  if (a.expectations.size() != b.expectations.size()) return false;
  for (size_t i = 0; i < a.expectations.size(); ++i)
    if (a.expectations[i].pass != b.expectations[i].pass ||
        a.expectations[i].description != b.expectations[i].description)
      return false;
  return a.pass == b.pass;
}

std::string ms_str(double ms) {
  return std::to_string((long long)(ms + 0.5)) + " ms";
}

}  // namespace

int main() {
  using cdga::ScenarioResult;
  auto wall0 = std::chrono::steady_clock::now();
  cdga::ScenarioContext ctx;

  ScenarioResult axioms = cdga::run_scenario("axioms-sweep", ctx);
  line(1, axioms.pass && axioms.ms < 1000.0,
       "cdg axioms hold for every algebra family on [-10, 10] (" + ms_str(axioms.ms) +
           ", bound 1000 ms)");

  ScenarioResult prop22 = cdga::run_scenario("prop-2.2-sweep", ctx);
  line(2, prop22.pass && prop22.ms < 2000.0,
       "rank 1..3 intervals of length 1..10 over k[c] contract exactly at even length (" +
           ms_str(prop22.ms) + ", bound 2000 ms)");

  ScenarioResult forget = cdga::run_scenario("homotopy-forget", ctx);
  line(3, forget.pass,
       "30 seeded random precomplexes over k[c] and k[c]/c^2: contractibility agrees with "
       "the action-forgetting solve");

  ScenarioResult ses = cdga::run_scenario("derivedzero-ses", ctx);
  line(4, ses.pass, "the interval extension is exact and its totalization is again a module");

  ScenarioResult cone = cdga::run_scenario("prophor-cone", ctx);
  line(5, cone.pass,
       "contractible quotient, cone blocks [eps eps] / [1 0]^t, and the strict isomorphism "
       "cone = M'[1] (+) M");

  ScenarioResult dec = cdga::run_scenario("lemindec-random", ctx);
  line(6, dec.pass,
       "50 seeded Z/2 complexes decompose with strings = rank d0 + rank d1 and reassemble "
       "isomorphically");

  ScenarioResult mf = cdga::run_scenario("splitting-cones-kuu", ctx);
  ScenarioResult ku = cdga::run_scenario("ku-cocycle", ctx);
  line(7, mf.pass && ku.pass,
       "matrix factorizations (1,1) and (eps,1) contract, the zero splitting rebuilds "
       "k (+) k[-1], and the pair (1, eps) is a cocycle but no boundary");

  ScenarioResult lift = cdga::run_scenario("liftgoed-hom", ctx);
  line(8, lift.pass,
       "10 seeded fixtures match hom cohomology over the deformation against the "
       "eps-reduced hom in every shift");

  ScenarioResult lemma = cdga::run_scenario("bar-lemma-5.6", ctx);
  ScenarioResult invert = cdga::run_scenario("bar-inverting-5.5", ctx);
  std::string flag = lemma.witnesses.value("passing_convention", "?");
  bool cap4 = invert.witnesses.value("length_cap", -1) == 4;
  line(9, lemma.pass && invert.pass && cap4 && flag == "shifted",
       "contraction identities hold through p = 6 under exactly one reading (" + flag +
           "), and the comodule series inverts 1 - psi at length cap 4");

  ScenarioResult proj = cdga::run_scenario("graded-proj-not-hproj", ctx);
  line(10, proj.pass,
       "the two-periodic k[eps] module is graded free of rank one per degree yet admits "
       "no contracting homotopy");

  cdga::ScenarioContext f5 = ctx;
  f5.field = cdga::FieldSpec::prime_field(5);
  bool portable = true;
  for (const char* name :
       {"prop-2.2-sweep", "derivedzero-ses", "prophor-cone", "lemindec-random"}) {
    ScenarioResult over_q = cdga::run_scenario(name, ctx);
    ScenarioResult over_f5 = cdga::run_scenario(name, f5);
    portable = portable && over_f5.pass && same_verdicts(over_q, over_f5);
  }
  line(11, portable, "criteria 2, 4, 5 and 6 hold with identical verdicts over Q and F_5");

  double wall =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall0)
          .count();
  bool in_budget = wall < 30000.0;
  std::cout << (in_budget ? "[PASS]" : "[FAIL]") << " total runtime " << ms_str(wall)
            << " (bound 30000 ms)" << std::endl;
  if (!in_budget) ++failures;

  if (failures) {
    std::cout << failures << " criteria failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}
