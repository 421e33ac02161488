// Copyright 2026 The CarForge Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "carforge/commands.hpp"
#include "carforge/error.hpp"

namespace {

using carforge::CommandOptions;
using carforge::Report;

int emit(const Report& r, const std::string& format) {
    std::cout << (format == "json" ? carforge::render_json(r) : carforge::render_text(r));
    return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"carforge: CAR representations on occupation-number spaces and their real forms"};
    app.require_subcommand(1);

    CommandOptions opt;
    std::string format = "text";
    double tolerance = 0.0;
    double seed_phase = 0.0;
    std::string path;
    std::string demo;

    const auto common = [&](CLI::App* cmd) {
        cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
        cmd->add_option("--tolerance", tolerance, "Absolute residual tolerance")->check(CLI::NonNegativeNumber);
        cmd->add_option("--seed", opt.seed, "Seed for randomized checks (printed in the report)");
    };

    CLI::App* car = app.add_subcommand("car-check", "Verify the CAR relations of a descriptor");
    CLI::App* cocycle = app.add_subcommand("cocycle-check", "Check the cocycle conditions of a descriptor");
    CLI::App* split = app.add_subcommand("split", "Decide whether a module admits an invariant real form");
    CLI::App* analyze = app.add_subcommand("analyze", "Commutant, Frobenius-Schur indicator, complex structures");
    for (CLI::App* cmd : {car, cocycle, split, analyze}) {
        cmd->add_option("descriptor", path, "Descriptor file (JSON)")->required();
        common(cmd);
    }
    split->add_option("--seed-phase", seed_phase, "Phase of the seed U(0), in degrees");

    CLI::App* cartan = app.add_subcommand("cartan-table", "Holonomy of the trivial cocycle for m = 1..max-m");
    common(cartan);
    cartan->add_option("--max-m", opt.max_m, "Largest mode count");

    CLI::App* demo_cmd = app.add_subcommand("demo", "Run a named end-to-end demonstration");
    demo_cmd->add_option("name", demo, "fock-frozen | gw311 | gauge-roundtrip")->required();
    common(demo_cmd);

    CLI::App* report = app.add_subcommand("report", "Run every acceptance criterion");
    common(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : carforge::kExitUsage;
    }

    try {
        for (CLI::App* cmd : app.get_subcommands()) {
            if (cmd->count("--tolerance") > 0) opt.tolerance = tolerance;
        }
        if (split->parsed() && split->count("--seed-phase") > 0) opt.seed_phase_degrees = seed_phase;
        if (car->parsed()) return emit(carforge::cmd_car_check(path, opt), format);
        if (cocycle->parsed()) return emit(carforge::cmd_cocycle_check(path, opt), format);
        if (split->parsed()) return emit(carforge::cmd_split(path, opt), format);
        if (analyze->parsed()) return emit(carforge::cmd_analyze(path, opt), format);
        if (cartan->parsed()) return emit(carforge::cmd_cartan_table(opt), format);
        if (demo_cmd->parsed()) return emit(carforge::cmd_demo(demo, opt), format);
        if (report->parsed()) return emit(carforge::cmd_report(opt), format);
    } catch (const carforge::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return carforge::kExitUsage;
    } catch (const carforge::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return carforge::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return carforge::kExitInternal;
    }
    return carforge::kExitInternal;
}
