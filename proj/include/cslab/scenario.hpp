#pragma once

#include "cslab/numeric.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace cslab {

struct ScenarioReport {
    int exit_code = 0;  // 0 pass, 1 assertion failure, 2 schema error
    std::vector<std::string> lines;
    std::string name;

    bool ok() const { return exit_code == 0; }
};

/// Loads, validates, and executes one scenario file: builds the schedule,
/// runs the requested constructions, and checks every assertion and logic
/// item. The report is deterministic given the file and its seed.
ScenarioReport run_scenario(const std::string& path);

ScenarioReport run_scenario_text(const std::string& json_text, const std::string& name);

void write_report(std::ostream& os, const ScenarioReport& report);

/// Figure-style CSV: columns x, sum_omega, tangent_pos, tangent_neg at
/// 12 decimal digits, x in [-1, 1] sampled samples-per-unit. Byte-stable.
/// nu_max <= 16, samples <= 10^6.
void emit_omega_csv(Natural nu_max, Natural samples, const std::string& out_path);

}  // namespace cslab
