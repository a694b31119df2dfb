#pragma once

#include <string>
#include <vector>

#include "enrlat/config_io.hpp"

namespace enrlat {

struct AssertionResult {
    std::string label;     // what fact is being re-derived
    bool pass = false;
    std::string expected;
    std::string got;
};

struct ScenarioReport {
    std::string name;
    bool structural_ok = false;
    std::vector<std::string> structural_notes;
    std::vector<AssertionResult> assertions;

    bool all_pass() const {
        if (!structural_ok) return false;
        for (const auto& a : assertions)
            if (!a.pass) return false;
        return true;
    }
};

// Bundled scenario names, in canonical order.
std::vector<std::string> scenario_names();

std::string default_data_dir();

// Structural validation of the transcription (degree patterns, spans),
// run before any value assertion.
ScenarioReport run_scenario(const std::string& name, const std::string& data_dir = default_data_dir());

std::vector<ScenarioReport> run_all(const std::string& data_dir = default_data_dir());

}  // namespace enrlat
