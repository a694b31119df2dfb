#include <doctest.h>

#include "enrlat/config_io.hpp"
#include "enrlat/report_json.hpp"
#include "enrlat/scenario.hpp"

using namespace enrlat;

TEST_CASE("parsing a minimal configuration") {
    ScenarioConfig sc = parse_config_string(R"(
# a two-curve chain
name tiny
curve A B
edge A B 1
class D : 2 A 1 B
)");
    CHECK(sc.cfg.name == "tiny");
    CHECK(sc.cfg.curves.size() == 2);
    CHECK(sc.cfg.edges.size() == 1);
    AmbientModel m = build_ambient(sc.cfg);
    DivClass d = class_of(sc.cfg, m, "D");
    CHECK(pair(m.lattice, d, d) == Rat(-2) * Rat(4) + Rat(2 * 2 * 1) * Rat(1) + Rat(-2));
}

TEST_CASE("parse errors carry line numbers") {
    auto expect_error = [](const std::string& text, int line) {
        try {
            parse_config_string(text);
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_error("name x\ncurve A\nedge A A 1\n", 3);          // self-loop
    expect_error("name x\ncurve A B\nedge A B nine\n", 3);     // bad multiplicity
    expect_error("name x\ncurve A\nfrobnicate A\n", 3);        // unknown directive
    expect_error("name x\ncurve A B\nclass D : 1/0 A\n", 3);   // zero denominator
    expect_error("name x\ncurve A B\nclass D : 1 C\n", 3);     // unknown curve
    expect_error("name x\n", 1);                               // no curves
}

TEST_CASE("bundled files parse and expose their declarations") {
    ScenarioConfig vii = load_config(default_data_dir() + "/type_vii.cfg");
    CHECK(vii.cfg.curves.size() == 20);
    CHECK(vii.cfg.extra_generators.size() == 1);
    CHECK(vii.cfg.named_classes.count("H1") == 1);
    CHECK(vii.cfg.named_classes.count("G") == 1);
    CHECK(vii.guard_class.has_value());

    ScenarioConfig d8 = load_config(default_data_dir() + "/d8_tilde.cfg");
    CHECK(d8.cfg.extra_generators.size() == 1);         // the computed half generator
    CHECK(d8.cfg.named_classes.count("F1") == 1);       // computed fiber classes
    CHECK(d8.cfg.named_classes.count("G2") == 1);
    CHECK(d8.sequence("main").degeneracy() == 2);
    CHECK_THROWS_AS(d8.sequence("nope"), std::invalid_argument);
}

TEST_CASE("rationals round-trip through the report encoding") {
    for (const Rat& r : {Rat(0), Rat(7), Rat(-3, 2), Rat(22, 7), Rat(Int("123456789012345678901234567890"), Int(7))}) {
        nlohmann::json j = rat_to_json(r);
        CHECK(rat_from_json(j) == r);
        CHECK(j.at("num").is_string());  // integer pairs in decimal strings, no floats
    }
    VecQ v(3);
    v << Rat(1, 3), Rat(-5), Rat(0);
    CHECK(vec_from_json(vec_to_json(v)) == v);
}
