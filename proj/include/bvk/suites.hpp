#pragma once

// Named verification suites behind the CLI: each suite runs a fixed,
// seeded list of cases and returns one ResidualReport per case.  Module
// errors become failed cases instead of aborting the run.

#include <optional>
#include <string>
#include <vector>

#include "bvk/grid.hpp"
#include "bvk/report.hpp"

namespace bvk {

struct SuiteConfig {
    std::string suite = "all";  // algebra | calculus | pseudoanalytic | schrodinger | all
    GridDomain grid = GridDomain::defaults();
    std::optional<Plane> plane;
    std::optional<double> tolerance_override;
    unsigned seed = 42;
    int refine = 0;
    std::optional<std::string> f0;    // catalog name or DSL
    std::optional<std::string> pair;  // catalog name or "F-dsl,G-dsl"
    std::optional<std::string> w;     // DSL test function
};

struct SuiteResult {
    std::vector<ResidualReport> reports;
    bool all_pass = true;
};

// Throws ConfigError for unknown suites / malformed inputs; everything
// else is reported as a failed case.
SuiteResult run_suite(const SuiteConfig& cfg);

// "x=-1:1:9,y=0,..." per-axis overrides on the default grid; a single
// value freezes the axis.
GridDomain parse_grid_spec(const std::string& spec);

}  // namespace bvk
