#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "enrlat/scenario.hpp"

using namespace enrlat;

TEST_CASE("every bundled scenario passes") {
    for (const auto& name : scenario_names()) {
        ScenarioReport r = run_scenario(name);
        INFO(name);
        CHECK(r.structural_ok);
        for (const auto& a : r.assertions) {
            INFO(a.label, " expected='", a.expected, "' got='", a.got, "'");
            CHECK(a.pass);
        }
    }
}

TEST_CASE("unknown scenario names are rejected") {
    CHECK_THROWS_AS(run_scenario("nonsense"), std::invalid_argument);
}

TEST_CASE("structural validation runs before any value assertion") {
    // Corrupt the twenty-curve configuration by dropping one double bond and
    // point the scenario at the damaged copy: the degree screen must trip and
    // no assertion may run.
    std::ifstream in(default_data_dir() + "/type_vii.cfg");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    auto pos = text.find("edge K1 E1 2");
    REQUIRE(pos != std::string::npos);
    text.erase(pos, 13);

    std::string dir = "./corrupted_data";
    std::filesystem::create_directory(dir);
    {
        std::ofstream out(dir + "/type_vii.cfg");
        out << text;
    }
    ScenarioReport r = run_scenario("typeVII_fano", dir);
    CHECK(!r.structural_ok);
    CHECK(r.assertions.empty());
    CHECK(!r.structural_notes.empty());
    std::filesystem::remove_all(dir);
}

TEST_CASE("run_all aggregates the five scenarios in order") {
    auto reports = run_all();
    REQUIRE(reports.size() == 5);
    CHECK(reports[0].name == "E8_tilde");
    CHECK(reports[4].name == "typeVII_counterexample");
    for (const auto& r : reports) CHECK(r.all_pass());
}
