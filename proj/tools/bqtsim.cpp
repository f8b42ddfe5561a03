// Copyright 2026 The bqtsim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "bqt/metrics.hpp"
// bqtsim: sweeps, branch dumps, oracle verification and entropy curves.
#include <cstdlib>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "bqt/commands.hpp"
#include "bqt/kernels.hpp"

namespace {

using bqt::cli::QwMode;

const std::map<std::string, bqt::Scenario> kScenarios{
    {"recovery-adc", bqt::Scenario::RecoveryQubitsADC},
    {"all-adc", bqt::Scenario::AllQubitsADC},
    {"unprotected-recovery", bqt::Scenario::UnprotectedRecovery},
    {"unprotected-all", bqt::Scenario::UnprotectedAll},
};

void add_quadrature_options(CLI::App &cmd, bqt::QuadratureSpec &quad) {
    cmd.add_option("--nodes", quad.points,
                   "Quadrature nodes per axis (Simpson: subintervals, even)")
        ->capture_default_str();
    cmd.add_option("--rule", quad.rule, "Quadrature rule")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, bqt::QuadratureRule>{
                {"gauss-legendre", bqt::QuadratureRule::GaussLegendre},
                {"simpson", bqt::QuadratureRule::Simpson}},
            CLI::ignore_case))
        ->default_str("gauss-legendre");
    cmd.add_option("--measure", quad.measure,
                   "Input averaging: independent populations or alpha = gamma")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, bqt::AveragingMeasure>{
                {"independent", bqt::AveragingMeasure::Independent},
                {"symmetric", bqt::AveragingMeasure::Symmetric}},
            CLI::ignore_case))
        ->default_str("independent");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Bidirectional teleportation through amplitude-damping "
                 "channels: density-matrix simulation and closed-form checks"};
    app.require_subcommand(1);
    std::string simd;
    app.add_option("--simd", simd, "Force kernel set (scalar, avx2)")
        ->check(CLI::IsMember({"scalar", "avx2"}));

    bqt::cli::SweepConfig sweep;
    double pop0 = -1.0;
    CLI::App *sweep_cmd =
        app.add_subcommand("sweep", "Averaged fidelity and success over a grid");
    sweep_cmd->add_option("--scenario", sweep.scenario, "Scenario")
        ->required()
        ->transform(CLI::CheckedTransformer(kScenarios));
    sweep_cmd->add_option("--p-min", sweep.p_min)->capture_default_str();
    sweep_cmd->add_option("--p-max", sweep.p_max)->capture_default_str();
    sweep_cmd->add_option("--p-steps", sweep.p_steps)->capture_default_str();
    sweep_cmd->add_option("--qw-mode", sweep.qw_mode, "fixed, equal-p or grid")
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, QwMode>{{"fixed", QwMode::Fixed},
                                          {"equal-p", QwMode::EqualP},
                                          {"grid", QwMode::Grid}},
            CLI::ignore_case))
        ->default_str("fixed");
    sweep_cmd->add_option("--qw", sweep.qw, "Weak strength in fixed mode")
        ->capture_default_str();
    sweep_cmd->add_option("--qw-min", sweep.qw_min)->capture_default_str();
    sweep_cmd->add_option("--qw-max", sweep.qw_max)->capture_default_str();
    sweep_cmd->add_option("--qw-steps", sweep.qw_steps)->capture_default_str();
    CLI::Option *pop0_opt = sweep_cmd->add_option(
        "--pop0", pop0,
        "Fixed |alpha|^2 = |gamma|^2; reports total fidelity at that input");
    sweep_cmd->add_flag("--postselected", sweep.postselected,
                        "Append the success-weighted fidelity column");
    sweep_cmd->add_option("--out", sweep.output_path, "CSV path (default stdout)");
    add_quadrature_options(*sweep_cmd, sweep.quad);

    bqt::cli::BranchesConfig branches;
    CLI::App *branches_cmd =
        app.add_subcommand("branches", "All sixteen measurement branches of one run");
    branches_cmd->add_option("--scenario", branches.scenario, "Scenario")
        ->required()
        ->transform(CLI::CheckedTransformer(kScenarios));
    branches_cmd->add_option("--p", branches.p)->required();
    branches_cmd->add_option("--qw", branches.q_w)->capture_default_str();
    branches_cmd->add_option("--alice-pop0", branches.alice.pop0)->capture_default_str();
    branches_cmd->add_option("--alice-phase", branches.alice.phase)->capture_default_str();
    branches_cmd->add_option("--bob-pop0", branches.bob.pop0)->capture_default_str();
    branches_cmd->add_option("--bob-phase", branches.bob.phase)->capture_default_str();

    bqt::cli::VerifyConfig verify;
    CLI::App *verify_cmd =
        app.add_subcommand("verify", "Simulation against closed forms and properties");
    verify_cmd->add_option("--grid", verify.grid_resolution, "Grid spacing 1/N")
        ->capture_default_str();
    verify_cmd->add_flag("--closed-grid", verify.closed_grid,
                         "Include p, q_w = 1 in the success-probability grid");
    verify_cmd->add_option("--inputs", verify.inputs_per_point,
                           "Random input pairs per grid point")
        ->capture_default_str();
    verify_cmd->add_option("--seed", verify.seed)->capture_default_str();
    add_quadrature_options(*verify_cmd, verify.quad);

    std::size_t entropy_steps = 51;
    std::string entropy_out;
    CLI::App *entropy_cmd =
        app.add_subcommand("entropy", "Entropy of the (2,4) marginal against p");
    entropy_cmd->add_option("--p-steps", entropy_steps)->capture_default_str();
    entropy_cmd->add_option("--out", entropy_out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return bqt::cli::kExitUsage;
    }

    if (simd == "scalar") {
        bqt::kernels::set_active_isa(bqt::kernels::Isa::Scalar);
    } else if (simd == "avx2") {
        if (!bqt::kernels::isa_available(bqt::kernels::Isa::Avx2)) {
            std::cerr << "error: avx2 kernels are not available on this CPU\n";
            return bqt::cli::kExitUsage;
        }
        bqt::kernels::set_active_isa(bqt::kernels::Isa::Avx2);
    }

    if (*sweep_cmd) {
        if (*pop0_opt) {
            sweep.pop0 = pop0;
        }
        return bqt::cli::cmd_sweep(sweep, std::cout, std::cerr);
    }
    if (*branches_cmd) {
        return bqt::cli::cmd_branches(branches, std::cout, std::cerr);
    }
    if (*verify_cmd) {
        return bqt::cli::cmd_verify(verify, std::cout, std::cerr);
    }
    return bqt::cli::cmd_entropy(entropy_steps, entropy_out, std::cout, std::cerr);
}
