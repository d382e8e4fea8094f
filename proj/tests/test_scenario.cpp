#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qgess/catalog.hpp"
#include "qgess/scenario.hpp"

using namespace qgess;
using json = nlohmann::json;

namespace {

std::string pointer_of(const json& cfg) {
  try {
    run_scenario(cfg);
  } catch (const ConfigError& e) {
    return e.pointer();
  }
  return "<accepted>";
}

json ewl_base() {
  return {{"scheme", "EWL"},
          {"game", {{"pd", {3, 0, 5, 1}}}},
          {"initial_state", {{"gamma", 1.5707963267948966}}},
          {"candidates", json::array({"Q"})},
          {"analyses", json::array({"payoff"})}};
}

json mw2_base() {
  return {{"scheme", "MW2"},
          {"game", {{"symmetric", {1, 0, 2, 3}}}},
          {"initial_state", {{"bsq", 0.5}}},
          {"candidates", json::array({0.0})},
          {"analyses", json::array({"ess"})}};
}

}  // namespace

TEST_CASE("reports are byte-stable and self-describing") {
  for (const CatalogCase& c : catalog()) {
    for (const NamedConfig& n : c.configs) {
      CAPTURE(c.id);
      CAPTURE(n.name);
      const json first = run_scenario(n.config).report;
      const std::string text = render_report(first);
      CHECK(render_report(run_scenario(n.config).report) == text);
      CHECK(render_report(run_scenario(first.at("config")).report) == text);
      CHECK(first.at("library").at("name") == "qgess");
      CHECK(first.at("library").at("version") == library_version());
      CHECK(first.at("settings").contains("grid_step"));
    }
  }
}

TEST_CASE("every catalog case passes") {
  for (const CatalogCase& c : catalog()) {
    const CaseResult r = reproduce_case(c);
    CAPTURE(c.id);
    for (const CheckLine& line : r.lines) {
      if (line.kind == LineKind::kFail) CAPTURE(line.text);
    }
    CHECK(r.passed);
  }
  CHECK(catalog().size() == 13);
  CHECK(find_case("pd-ewl-caseC") != nullptr);
  CHECK(find_case("no-such-case") == nullptr);
}

TEST_CASE("config errors carry JSON pointers") {
  json c = ewl_base();
  c.erase("initial_state");
  CHECK(pointer_of(c) == "/initial_state");

  c = ewl_base();
  c["initial_state"] = json::object();
  CHECK(pointer_of(c) == "/initial_state/gamma");

  c = ewl_base();
  c["initial_state"]["gamma"] = 2.0;
  CHECK(pointer_of(c) == "/initial_state/gamma");

  c = ewl_base();
  c["colour"] = "blue";
  CHECK(pointer_of(c) == "/colour");

  c = ewl_base();
  c["scheme"] = "XYZ";
  CHECK(pointer_of(c) == "/scheme");

  c = ewl_base();
  c["candidates"] = json::array({json::array({4.0, 0.0})});
  CHECK(pointer_of(c) == "/candidates/0");

  c = ewl_base();
  c["candidates"] = json::array({{{"p", 0.5}, {"q", 0.5}}});
  CHECK(pointer_of(c) == "/candidates/0");

  c = ewl_base();
  c["game"] = {{"battle_of_sexes", {3, 2, 1}}};
  CHECK(pointer_of(c) == "/initial_state/gamma");

  c = mw2_base();
  c["initial_state"]["bsq"] = 1.5;
  CHECK(pointer_of(c) == "/initial_state/bsq");

  c = mw2_base();
  c["game"]["symmetric"] = {1, 0, 2};
  CHECK(pointer_of(c) == "/game/symmetric");

  c = mw2_base();
  c["initial_state"]["pairing"] = "SIDEWAYS";
  CHECK(pointer_of(c) == "/initial_state/pairing");

  c = mw2_base();
  c["analyses"] = json::array({"dance"});
  CHECK(pointer_of(c).rfind("/analyses", 0) == 0);

  c = ewl_base();
  c["analyses"] = json::array({"invasion"});
  CHECK(pointer_of(c) != "<accepted>");

  CHECK(pointer_of(mw2_base()) == "<accepted>");
  CHECK(pointer_of(ewl_base()) == "<accepted>");
}

TEST_CASE("syntax errors report line and column") {
  try {
    parse_config_text("{\n  \"scheme\": \"EWL\",\n  \"game\": [1,,2]\n}\n");
    FAIL("expected a ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.pointer().rfind("line 3, column", 0) == 0);
  }
  CHECK(parse_config_text("{\"scheme\": \"EWL\"}").at("scheme") == "EWL");
}

TEST_CASE("CSV files accompany scans and replicator runs") {
  json c = mw2_base();
  c["analyses"] = json::array({"ne_scan", "replicate"});
  c["replicate"] = {{"steps", 2000}, {"sample_every", 100}};
  const ScenarioOutput out = run_scenario(c, true);
  CHECK_FALSE(out.csv.empty());
  bool scan = false;
  for (const CsvFile& f : out.csv) {
    CHECK_FALSE(f.content.empty());
    scan = scan || f.name == "ne_scan.csv";
  }
  CHECK(scan);
  CHECK(run_scenario(c, false).csv.empty());
}
