// bvk: verification suites for bicomplex pseudoanalytic function theory
// and the complexified Schrodinger factorization.
//
// Exit codes: 0 all cases pass, 1 residual failure, 2 configuration error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bvk/errors.hpp"
#include "bvk/report.hpp"
#include "bvk/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"bicomplex Vekua / Schrodinger verification suites"};

    bvk::SuiteConfig cfg;
    std::string grid_spec;
    std::string plane;
    std::string f0, pair, w;
    std::string out_path;
    std::string format = "json";
    double tol = 0.0;
    bool quiet = false;

    app.add_option("--suite", cfg.suite,
                   "algebra | calculus | pseudoanalytic | schrodinger | all")
        ->default_val("all");
    app.add_option("--grid", grid_spec,
                   "per-axis ranges, e.g. x=-1:1:9,y=-1:1:9,p=-1:1:9,q=-1:1:9");
    app.add_option("--plane", plane, "restriction plane: c2 (freeze y,q) or d (freeze y,p)");
    app.add_option("--f0", f0, "Schrodinger particular solution: catalog name or DSL");
    app.add_option("--pair", pair, "generating pair: catalog name or 'F-dsl,G-dsl'");
    app.add_option("--w", w, "test function (DSL)");
    app.add_option("--tol", tol, "tolerance override for every case");
    app.add_option("--seed", cfg.seed, "random seed")->default_val(42);
    app.add_option("--refine", cfg.refine, "double the grid counts n times")->default_val(0);
    app.add_option("--out", out_path, "output path (default: stdout)");
    app.add_option("--format", format, "json | csv")->default_val("json");
    app.add_flag("--quiet", quiet, "suppress the per-case summary on stderr");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!grid_spec.empty()) cfg.grid = bvk::parse_grid_spec(grid_spec);
        if (!plane.empty()) {
            if (plane == "c2")
                cfg.plane = bvk::Plane::c_i2;
            else if (plane == "d")
                cfg.plane = bvk::Plane::d;
            else
                throw bvk::ConfigError("plane must be 'c2' or 'd'");
        }
        if (!f0.empty()) cfg.f0 = f0;
        if (!pair.empty()) cfg.pair = pair;
        if (!w.empty()) cfg.w = w;

        if (app.count("--tol")) {
            cfg.tolerance_override = tol;
        } else if (const char* env = std::getenv("BVK_TOL")) {
            try {
                cfg.tolerance_override = std::stod(env);
            } catch (const std::exception&) {
                throw bvk::ConfigError("BVK_TOL is not a number");
            }
        }

        bvk::ReportFormat fmt;
        if (format == "json")
            fmt = bvk::ReportFormat::json;
        else if (format == "csv")
            fmt = bvk::ReportFormat::csv;
        else
            throw bvk::ConfigError("format must be 'json' or 'csv'");

        bvk::SuiteResult result = bvk::run_suite(cfg);
        bvk::emit_report(result.reports, fmt, out_path);

        if (!quiet) {
            for (const auto& rep : result.reports) {
                std::fprintf(stderr, "%-4s %-55s max %.3e tol %.1e%s\n",
                             rep.pass ? "ok" : "FAIL", (rep.suite + "/" + rep.case_id).c_str(),
                             rep.max_residual, rep.tolerance,
                             rep.note.empty() ? "" : ("  [" + rep.note + "]").c_str());
            }
            std::fprintf(stderr, "%zu cases, %s\n", result.reports.size(),
                         result.all_pass ? "all passed" : "FAILURES");
        }
        return result.all_pass ? 0 : 1;
    } catch (const bvk::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const bvk::SyntaxError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const bvk::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
