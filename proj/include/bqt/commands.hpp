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
/**
 * @file commands.hpp
 * Subcommands of the bqtsim tool. Each takes a parsed config, writes CSV or
 * a report, and returns a process exit status.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqt/metrics.hpp"
#include "bqt/protocol.hpp"

namespace bqt::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitIo = 3;

/// Invalid command-line values; maps to kExitUsage.
class UsageError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Output file could not be written; maps to kExitIo.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// steps evenly spaced values from lo to hi inclusive (just lo if steps == 1).
[[nodiscard]] auto linspace(double lo, double hi, std::size_t steps)
    -> std::vector<double>;

/// 12 significant digits, negative zero printed as 0, NaN as empty.
[[nodiscard]] auto format_number(double v) -> std::string;

enum class QwMode { Fixed, EqualP, Grid };

struct SweepConfig {
    Scenario scenario = Scenario::RecoveryQubitsADC;
    double p_min = 0.0;
    double p_max = 1.0;
    std::size_t p_steps = 11;
    QwMode qw_mode = QwMode::Fixed;
    double qw = 0.0;
    double qw_min = 0.0;
    double qw_max = 1.0;
    std::size_t qw_steps = 11;
    /// Symmetric input population; unset means average over inputs.
    std::optional<double> pop0;
    QuadratureSpec quad;
    /// Append the success-weighted fidelity as an extra column.
    bool postselected = false;
    /// Empty or "-" writes to standard output.
    std::string output_path;

    /// Throws UsageError.
    void validate() const;
};

struct SweepRecord {
    Scenario scenario = Scenario::RecoveryQubitsADC;
    double p = 0.0;
    double q_w = 0.0;
    double f_av = 0.0; ///< NaN when every branch was annihilated
    double g_total = 0.0;
    std::optional<double> f_av_oracle;
    double g_total_oracle = 0.0;
    double eam_success = 1.0;
    double entropy_bob = 0.0;
    std::optional<double> pop0;
    double f_av_postselected = 0.0;
};

inline constexpr const char *kSweepHeader =
    "scenario,p,q_w,f_av,g_total,f_av_oracle,g_total_oracle,eam_success,"
    "entropy_bob";

/// Rows in output order: p outer, q_w inner.
[[nodiscard]] auto sweep(const SweepConfig &config) -> std::vector<SweepRecord>;

[[nodiscard]] auto format_sweep_csv(const SweepConfig &config,
                                    const std::vector<SweepRecord> &rows)
    -> std::string;

auto cmd_sweep(const SweepConfig &config, std::ostream &out, std::ostream &err)
    -> int;

struct BranchesConfig {
    Scenario scenario = Scenario::RecoveryQubitsADC;
    double p = 0.0;
    double q_w = 0.0;
    QubitInput alice;
    QubitInput bob;

    void validate() const;
};

[[nodiscard]] auto format_branches_csv(const ProtocolResult &result)
    -> std::string;

auto cmd_branches(const BranchesConfig &config, std::ostream &out,
                  std::ostream &err) -> int;

struct VerifyConfig {
    /// Grid spacing 1/grid_resolution for the success and property checks.
    std::size_t grid_resolution = 10;
    /// Extend the success-probability grid to p, q_w = 1.
    bool closed_grid = false;
    std::size_t inputs_per_point = 10;
    std::uint64_t seed = 20260101;
    QuadratureSpec quad;

    void validate() const;
};

/**
 * @brief One measured quantity of a check.
 *
 * For oracle comparisons @c worst is the largest absolute difference. For
 * inequality properties it is the largest violation (lhs short of rhs), so
 * a negative value means every point held with that much margin.
 */
struct CheckMetric {
    std::string label;
    double worst = 0.0;
    double tolerance = 0.0;
    std::string worst_point;
    bool seen = false;
};

struct CheckReport {
    int id = 0;
    std::string name;
    bool passed = true;
    std::vector<CheckMetric> metrics;
    std::size_t evaluated = 0;
    /// Annihilated branches (or fully annihilated runs) left out.
    std::size_t skipped = 0;
    std::vector<std::string> failures; ///< first few offending points
    std::vector<std::string> notes;
};

/// Runs the oracle and property checks in order.
[[nodiscard]] auto run_verify(const VerifyConfig &config)
    -> std::vector<CheckReport>;

auto cmd_verify(const VerifyConfig &config, std::ostream &out,
                std::ostream &err) -> int;

struct EntropyRow {
    double p = 0.0;
    double s_recovery = 0.0; ///< S(rho_24) with damping on qubits 2, 3
    double s_all = 0.0;      ///< S(rho'_24) with damping on every qubit
};

[[nodiscard]] auto entropy_curve(std::size_t p_steps) -> std::vector<EntropyRow>;

auto cmd_entropy(std::size_t p_steps, const std::string &output_path,
                 std::ostream &out, std::ostream &err) -> int;

} // namespace bqt::cli
