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
#include "bqt/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "bqt/channels.hpp"
#include "bqt/oracles.hpp"

namespace bqt::cli {
namespace {

auto in_unit(double v) -> bool { return std::isfinite(v) && v >= 0.0 && v <= 1.0; }

void require_unit(double v, const char *what) {
    if (!in_unit(v)) {
        throw UsageError(std::string(what) + " must lie in [0, 1], got " +
                         format_number(v));
    }
}

void write_output(const std::string &path, const std::string &text,
                  std::ostream &out) {
    if (path.empty() || path == "-") {
        out << text;
        out.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open " + path + " for writing");
    }
    file << text;
    file.close();
    if (!file) {
        throw IoError("failed writing " + path);
    }
}

// Runs body and maps the error types onto exit statuses.
template <typename Body>
auto guarded(std::ostream &err, Body &&body) -> int {
    try {
        return body();
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

auto qw_values(const SweepConfig &c, double p) -> std::vector<double> {
    switch (c.qw_mode) {
    case QwMode::Fixed:
        return {c.qw};
    case QwMode::EqualP:
        return {p};
    case QwMode::Grid:
        break;
    }
    return linspace(c.qw_min, c.qw_max, c.qw_steps);
}

auto g_total_closed_form(Scenario s, double p, double q) -> double {
    switch (s) {
    case Scenario::RecoveryQubitsADC:
        return oracle::g_t_I(p, q);
    case Scenario::AllQubitsADC:
        return oracle::g_t_II(p, q);
    default:
        return 1.0;
    }
}

auto unprotected_closed_form(Scenario s, double p) -> double {
    return s == Scenario::UnprotectedRecovery ? oracle::f_av_unprot_I(p)
                                              : oracle::f_av_unprot_II(p);
}

auto unprotected_partner(Scenario s) -> Scenario {
    return s == Scenario::RecoveryQubitsADC ? Scenario::UnprotectedRecovery
                                            : Scenario::UnprotectedAll;
}

auto eam_closed_form(Scenario s, double p) -> double {
    return s == Scenario::RecoveryQubitsADC ? oracle::g_eam_I(p)
                                            : oracle::g_eam_II(p);
}

auto make_record(const SweepConfig &c, const DistributedChannel &dist,
                 double entropy, double p, double q) -> SweepRecord {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    SweepRecord r;
    r.scenario = c.scenario;
    r.p = p;
    r.q_w = q;
    r.eam_success = dist.eam_success;
    r.entropy_bob = entropy;
    r.g_total_oracle = g_total_closed_form(c.scenario, p, q);
    r.pop0 = c.pop0;
    if (c.pop0) {
        const QubitInput in{*c.pop0, 0.0};
        try {
            const ProtocolResult res = run_protocol(dist, c.scenario, p, q, in, in);
            r.f_av = res.total_fidelity;
            r.g_total = res.total_success;
            r.f_av_postselected = res.postselected_fidelity;
            r.f_av_oracle =
                oracle::total_fidelity(c.scenario, p, q, *c.pop0, *c.pop0);
        } catch (const DegenerateBranchError &) {
            r.f_av = nan;
            r.g_total = 0.0;
            r.f_av_postselected = nan;
        }
        return r;
    }
    const AverageResult avg = average_over_inputs(dist, c.scenario, p, q, c.quad);
    r.f_av = avg.f_av;
    r.g_total = avg.g_total;
    r.f_av_postselected = avg.f_av_postselected;
    if (!is_protected(c.scenario)) {
        r.f_av_oracle = unprotected_closed_form(c.scenario, p);
    }
    return r;
}

auto point(Scenario s, double p, double q) -> std::string {
    return std::string("scenario=") + std::string(scenario_name(s)) +
           " p=" + format_number(p) + " q_w=" + format_number(q);
}

auto point(Scenario s, double p, double q, const QubitInput &a,
           const QubitInput &b) -> std::string {
    return point(s, p, q) + " alice=(" + format_number(a.pop0) + "," +
           format_number(a.phase) + ") bob=(" + format_number(b.pop0) + "," +
           format_number(b.phase) + ")";
}

constexpr std::size_t kMaxListedFailures = 8;

class Check {
  public:
    Check(int id, std::string name) {
        report_.id = id;
        report_.name = std::move(name);
    }

    auto add_metric(std::string label, double tolerance) -> std::size_t {
        CheckMetric m;
        m.label = std::move(label);
        m.tolerance = tolerance;
        m.worst = 0.0;
        report_.metrics.push_back(std::move(m));
        return report_.metrics.size() - 1;
    }

    /// |sim - ref| <= tolerance of metric k.
    void compare(std::size_t k, double sim, double ref, const std::string &where) {
        const double err = std::abs(sim - ref);
        observe(k, err, !(err <= report_.metrics[k].tolerance), where,
                "sim=" + format_number(sim) + " oracle=" + format_number(ref) +
                    " |diff|=" + format_number(err));
    }

    /// lhs >= rhs - tolerance.
    void at_least(std::size_t k, double lhs, double rhs, const std::string &where) {
        const double violation = rhs - lhs;
        observe(k, violation, !(violation <= report_.metrics[k].tolerance), where,
                "lhs=" + format_number(lhs) + " rhs=" + format_number(rhs));
    }

    /// lhs < rhs with no slack.
    void strictly_below(std::size_t k, double lhs, double rhs,
                        const std::string &where) {
        observe(k, lhs - rhs, !(lhs < rhs), where,
                "lhs=" + format_number(lhs) + " rhs=" + format_number(rhs));
    }

    void skip(std::size_t n = 1) { report_.skipped += n; }
    void note(std::string text) { report_.notes.push_back(std::move(text)); }

    auto finish() -> CheckReport { return std::move(report_); }

  private:
    void observe(std::size_t k, double value, bool failed, const std::string &where,
                 const std::string &detail) {
        CheckMetric &m = report_.metrics[k];
        ++report_.evaluated;
        if (!m.seen || value > m.worst || std::isnan(value)) {
            m.worst = value;
            m.worst_point = where;
            m.seen = true;
        }
        if (failed) {
            report_.passed = false;
            if (report_.failures.size() < kMaxListedFailures) {
                report_.failures.push_back(m.label + " at " + where + ": " + detail);
            }
        }
    }

    CheckReport report_;
};

class InputSampler {
  public:
    explicit InputSampler(std::uint64_t seed) : engine_(seed) {}

    auto next() -> QubitInput {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        const double pop0 = unit(engine_);
        const double phase = 2.0 * std::numbers::pi * unit(engine_);
        return {pop0, phase};
    }

  private:
    std::mt19937_64 engine_;
};

constexpr std::array<Scenario, 2> kProtected{Scenario::RecoveryQubitsADC,
                                             Scenario::AllQubitsADC};
constexpr std::array<Scenario, 2> kUnprotected{Scenario::UnprotectedRecovery,
                                               Scenario::UnprotectedAll};

auto grid(std::size_t n, std::size_t first, std::size_t last)
    -> std::vector<double> {
    std::vector<double> v;
    for (std::size_t k = first; k <= last; ++k) {
        v.push_back(static_cast<double>(k) / static_cast<double>(n));
    }
    return v;
}

auto check_success(const VerifyConfig &cfg, InputSampler &rng) -> CheckReport {
    Check c(1, "total success probability vs closed form");
    const std::size_t m = c.add_metric("|g_total - g_t|", 1e-10);
    const std::size_t n = cfg.grid_resolution;
    const auto values = grid(n, 0, cfg.closed_grid ? n : n - 1);
    const DensityMatrix channel = prepare_channel();
    for (const Scenario s : kProtected) {
        for (const double p : values) {
            const DistributedChannel dist = distribute(channel, s, p);
            for (const double q : values) {
                const double ref = g_total_closed_form(s, p, q);
                for (std::size_t t = 0; t < cfg.inputs_per_point; ++t) {
                    const QubitInput a = rng.next();
                    const QubitInput b = rng.next();
                    try {
                        const ProtocolResult r = run_protocol(dist, s, p, q, a, b);
                        c.skip(r.degenerate_count);
                        c.compare(m, r.total_success, ref, point(s, p, q, a, b));
                    } catch (const DegenerateBranchError &) {
                        c.skip(16);
                    }
                }
            }
        }
    }
    return c.finish();
}

auto check_suppression(const VerifyConfig &cfg, InputSampler &rng) -> CheckReport {
    Check c(2, "perfect suppression at q_w = p");
    const std::size_t mb = c.add_metric("|branch fidelity - 1|", 1e-9);
    const std::size_t mf = c.add_metric("|F_av - 1|", 1e-9);
    auto values = grid(cfg.grid_resolution, 0, cfg.grid_resolution - 1);
    values.push_back(0.99);
    const DensityMatrix channel = prepare_channel();
    for (const Scenario s : kProtected) {
        for (const double p : values) {
            const DistributedChannel dist = distribute(channel, s, p);
            for (std::size_t t = 0; t < cfg.inputs_per_point; ++t) {
                const QubitInput a = rng.next();
                const QubitInput b = rng.next();
                const ProtocolResult r = run_protocol(dist, s, p, p, a, b);
                for (const BranchOutcome &br : r.branches) {
                    if (br.degenerate) {
                        c.skip();
                        continue;
                    }
                    c.compare(mb, br.branch_fidelity, 1.0,
                              point(s, p, p, a, b) + " branch=(" +
                                  std::to_string(br.i) + "," +
                                  std::to_string(br.j) + ")");
                }
            }
            const AverageResult avg = average_over_inputs(dist, s, p, p, cfg.quad);
            c.compare(mf, avg.f_av, 1.0, point(s, p, p));
        }
        // at p = q_w = 1 the weak measurement removes every branch
        const DistributedChannel dist = distribute(channel, s, 1.0);
        std::size_t annihilated = 0;
        for (std::size_t t = 0; t < cfg.inputs_per_point; ++t) {
            const QubitInput a = rng.next();
            const QubitInput b = rng.next();
            try {
                const ProtocolResult r = run_protocol(dist, s, 1.0, 1.0, a, b);
                c.skip(r.degenerate_count);
            } catch (const DegenerateBranchError &) {
                c.skip(16);
                ++annihilated;
            }
        }
        c.note(point(s, 1.0, 1.0) + ": " + std::to_string(annihilated) + " of " +
               std::to_string(cfg.inputs_per_point) +
               " runs fully annihilated (success probability 0), skipped");
    }
    return c.finish();
}

auto check_unprotected(const VerifyConfig &cfg) -> CheckReport {
    Check c(3, "unprotected averaged fidelity vs closed form");
    const std::size_t mf = c.add_metric("|F_av - closed form|", 1e-6);
    const std::size_t mg = c.add_metric("|g_total - 1|", 1e-10);
    const DensityMatrix channel = prepare_channel();
    for (const Scenario s : kUnprotected) {
        for (const double p : linspace(0.0, 1.0, 51)) {
            const DistributedChannel dist = distribute(channel, s, p);
            const AverageResult avg = average_over_inputs(dist, s, p, 0.0, cfg.quad);
            c.compare(mf, avg.f_av, unprotected_closed_form(s, p), point(s, p, 0.0));
            c.compare(mg, avg.g_total, 1.0, point(s, p, 0.0));
        }
    }
    return c.finish();
}

auto check_eam() -> CheckReport {
    Check c(4, "EAM post-selection probability vs closed form");
    const std::size_t m = c.add_metric("|eam_success - closed form|", 1e-12);
    const DensityMatrix channel = prepare_channel();
    for (const Scenario s : kProtected) {
        for (const double p : linspace(0.0, 1.0, 51)) {
            c.compare(m, distribute(channel, s, p).eam_success, eam_closed_form(s, p),
                      point(s, p, 0.0));
        }
    }
    return c.finish();
}

struct Sample {
    Scenario scenario;
    double p;
    double q;
    QubitInput alice;
    QubitInput bob;
};

auto branch_samples(InputSampler &rng) -> std::vector<Sample> {
    std::vector<Sample> out;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::mt19937_64 qs(7);
    for (const Scenario s : kProtected) {
        for (const double p : {0.2, 0.5, 0.8}) {
            for (int t = 0; t < 5; ++t) {
                const QubitInput a = rng.next();
                const QubitInput b = rng.next();
                out.push_back({s, p, 0.95 * unit(qs), a, b});
            }
        }
    }
    return out;
}

auto check_tables(const std::vector<Sample> &samples) -> CheckReport {
    Check c(5, "recovered and corrected branch states vs symbolic tables");
    const std::size_t mr = c.add_metric("max |recovered - table|", 1e-12);
    const std::size_t mo = c.add_metric("max |corrected - output formula|", 1e-10);
    const DensityMatrix channel = prepare_channel();
    for (const Sample &smp : samples) {
        const DistributedChannel dist = distribute(channel, smp.scenario, smp.p);
        const DensityMatrix total = compose_total(smp.alice, dist.state, smp.bob);
        const auto branches = enumerate_branches(total, smp.scenario, smp.p, smp.q);
        for (const BranchOutcome &br : branches) {
            const std::string where = point(smp.scenario, smp.p, smp.q, smp.alice,
                                            smp.bob) +
                                      " branch=(" + std::to_string(br.i) + "," +
                                      std::to_string(br.j) + ")";
            const ComplexMatrix table = oracle::recovered_state(
                smp.scenario, smp.p, smp.alice, smp.bob, br.i, br.j);
            c.compare(mr, br.recovered.matrix().max_abs_diff(table), 0.0, where);
            if (br.degenerate) {
                c.skip();
                continue;
            }
            const ComplexMatrix expected = oracle::output_state(
                smp.scenario, smp.p, smp.q, smp.alice, smp.bob, br.i, br.j);
            c.compare(mo, br.corrected.matrix().max_abs_diff(expected), 0.0, where);
        }
    }
    return c.finish();
}

auto check_probabilities(const std::vector<Sample> &samples) -> CheckReport {
    Check c(6, "joint branch probabilities vs four-case formulas");
    const std::size_t m = c.add_metric("|joint_prob - formula|", 1e-12);
    for (const Sample &smp : samples) {
        const ProtocolResult r =
            run_protocol(smp.scenario, smp.p, smp.q, smp.alice, smp.bob);
        for (const BranchOutcome &br : r.branches) {
            const double ref = oracle::branch_probability(
                smp.scenario, smp.p, smp.alice.pop0, smp.bob.pop0, br.i, br.j);
            c.compare(m, br.joint_prob, ref,
                      point(smp.scenario, smp.p, smp.q, smp.alice, smp.bob) +
                          " branch=(" + std::to_string(br.i) + "," +
                          std::to_string(br.j) + ")");
        }
    }
    return c.finish();
}

auto check_properties(const VerifyConfig &cfg) -> CheckReport {
    Check c(7, "qualitative properties of averaged fidelity");
    const std::size_t ma = c.add_metric("(a) F_unprotected - F_protected, q_w <= p", 1e-9);
    const std::size_t mbf = c.add_metric("(b) F(q_w) - F(p), q_w > p", 0.0);
    const std::size_t mbg = c.add_metric("(b) g(q_w) - g(p), q_w > p", 0.0);
    const std::size_t mc = c.add_metric("(c) F_II - F_I", 1e-9);
    const std::size_t n = cfg.grid_resolution;
    const auto values = grid(n, 1, n - 1);
    const DensityMatrix channel = prepare_channel();
    // averages[s][ip][iq]
    std::array<std::vector<std::vector<AverageResult>>, 2> averages;
    for (std::size_t si = 0; si < 2; ++si) {
        const Scenario s = kProtected[si];
        const Scenario u = unprotected_partner(s);
        averages[si].resize(values.size());
        for (std::size_t ip = 0; ip < values.size(); ++ip) {
            const double p = values[ip];
            const DistributedChannel dist = distribute(channel, s, p);
            const double f_un =
                average_over_inputs(distribute(channel, u, p), u, p, 0.0, cfg.quad)
                    .f_av;
            for (const double q : values) {
                averages[si][ip].push_back(average_over_inputs(dist, s, p, q, cfg.quad));
            }
            const AverageResult &at_p = averages[si][ip][ip];
            for (std::size_t iq = 0; iq < values.size(); ++iq) {
                const double q = values[iq];
                const AverageResult &r = averages[si][ip][iq];
                if (iq <= ip) {
                    c.at_least(ma, r.f_av, f_un, point(s, p, q));
                } else {
                    c.strictly_below(mbf, r.f_av, at_p.f_av, point(s, p, q));
                    c.strictly_below(mbg, r.g_total, at_p.g_total, point(s, p, q));
                }
            }
        }
    }
    for (std::size_t ip = 0; ip < values.size(); ++ip) {
        for (std::size_t iq = 0; iq < values.size(); ++iq) {
            c.at_least(mc, averages[0][ip][iq].f_av, averages[1][ip][iq].f_av,
                       "p=" + format_number(values[ip]) +
                           " q_w=" + format_number(values[iq]));
        }
    }
    return c.finish();
}

auto check_entropy() -> CheckReport {
    Check c(8, "entanglement entropy of the (2,4) marginal");
    const std::size_t m0 = c.add_metric("|S - 2| at p = 0", 1e-9);
    const std::size_t mo = c.add_metric("S'_24 - S_24", 1e-9);
    const std::size_t ms = c.add_metric("S'_24 - S_24 (strict, interior tenths)", 0.0);
    const auto rows = entropy_curve(51);
    c.compare(m0, rows.front().s_recovery, 2.0, "recovery p=0");
    c.compare(m0, rows.front().s_all, 2.0, "all p=0");
    for (std::size_t k = 0; k < rows.size(); ++k) {
        const std::string where = "p=" + format_number(rows[k].p);
        c.at_least(mo, rows[k].s_recovery, rows[k].s_all, where);
        if (k % 5 == 0 && k > 0 && k < 50) {
            c.strictly_below(ms, rows[k].s_all, rows[k].s_recovery, where);
        }
    }
    return c.finish();
}

auto check_convergence(const VerifyConfig &cfg) -> CheckReport {
    Check c(9, "quadrature convergence under node doubling");
    const std::size_t m = c.add_metric("|F_av(2n) - F_av(n)|", 1e-8);
    QuadratureSpec fine = cfg.quad;
    fine.points *= 2;
    const DensityMatrix channel = prepare_channel();
    const std::array<std::pair<double, double>, 3> points{
        {{0.3, 0.1}, {0.6, 0.8}, {0.9, 0.45}}};
    for (const Scenario s : kProtected) {
        for (const auto &[p, q] : points) {
            const DistributedChannel dist = distribute(channel, s, p);
            c.compare(m, average_over_inputs(dist, s, p, q, fine).f_av,
                      average_over_inputs(dist, s, p, q, cfg.quad).f_av, point(s, p, q));
        }
    }
    return c.finish();
}

void print_report(const CheckReport &r, std::ostream &out) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << ". " << r.name
        << " (" << r.evaluated << " evaluated, " << r.skipped << " skipped)\n";
    for (const CheckMetric &m : r.metrics) {
        out << "       " << m.label << ": worst " << format_number(m.worst)
            << " (tol " << format_number(m.tolerance) << ")";
        if (!m.worst_point.empty()) {
            out << " at " << m.worst_point;
        }
        out << '\n';
    }
    for (const std::string &n : r.notes) {
        out << "       note: " << n << '\n';
    }
    for (const std::string &f : r.failures) {
        out << "       offending: " << f << '\n';
    }
}

} // namespace

auto linspace(double lo, double hi, std::size_t steps) -> std::vector<double> {
    if (steps == 0) {
        return {};
    }
    if (steps == 1) {
        return {lo};
    }
    std::vector<double> v(steps);
    const double span = hi - lo;
    for (std::size_t k = 0; k < steps; ++k) {
        v[k] = lo + span * static_cast<double>(k) / static_cast<double>(steps - 1);
    }
    v.back() = hi;
    return v;
}

auto format_number(double v) -> std::string {
    if (std::isnan(v)) {
        return {};
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
    return buf;
}

void SweepConfig::validate() const {
    require_unit(p_min, "--p-min");
    require_unit(p_max, "--p-max");
    if (p_min > p_max) {
        throw UsageError("--p-min must not exceed --p-max");
    }
    if (p_steps < 1) {
        throw UsageError("--p-steps must be at least 1");
    }
    if (qw_mode == QwMode::Fixed) {
        require_unit(qw, "--qw");
    }
    if (qw_mode == QwMode::Grid) {
        require_unit(qw_min, "--qw-min");
        require_unit(qw_max, "--qw-max");
        if (qw_min > qw_max) {
            throw UsageError("--qw-min must not exceed --qw-max");
        }
        if (qw_steps < 1) {
            throw UsageError("--qw-steps must be at least 1");
        }
    }
    if (pop0) {
        require_unit(*pop0, "--pop0");
    }
    if (!is_protected(scenario) && !(qw_mode == QwMode::Fixed && qw == 0.0)) {
        throw UsageError(std::string(scenario_name(scenario)) +
                         " has no weak measurement; only --qw-mode fixed with "
                         "--qw 0 is allowed");
    }
    try {
        quad.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

auto sweep(const SweepConfig &config) -> std::vector<SweepRecord> {
    config.validate();
    std::vector<SweepRecord> rows;
    const DensityMatrix channel = prepare_channel();
    for (const double p : linspace(config.p_min, config.p_max, config.p_steps)) {
        const DistributedChannel dist = distribute(channel, config.scenario, p);
        const double entropy = entanglement_entropy_bob(dist.state);
        for (const double q : qw_values(config, p)) {
            rows.push_back(make_record(config, dist, entropy, p, q));
        }
    }
    return rows;
}

auto format_sweep_csv(const SweepConfig &config,
                      const std::vector<SweepRecord> &rows) -> std::string {
    std::string text = kSweepHeader;
    if (config.pop0) {
        text += ",pop0";
    }
    if (config.postselected) {
        text += ",f_av_postselected";
    }
    text += '\n';
    for (const SweepRecord &r : rows) {
        text += scenario_name(r.scenario);
        for (const double v : {r.p, r.q_w, r.f_av, r.g_total}) {
            text += ',' + format_number(v);
        }
        text += ',';
        if (r.f_av_oracle) {
            text += format_number(*r.f_av_oracle);
        }
        for (const double v : {r.g_total_oracle, r.eam_success, r.entropy_bob}) {
            text += ',' + format_number(v);
        }
        if (config.pop0) {
            text += ',' + format_number(r.pop0.value_or(*config.pop0));
        }
        if (config.postselected) {
            text += ',' + format_number(r.f_av_postselected);
        }
        text += '\n';
    }
    return text;
}

auto cmd_sweep(const SweepConfig &config, std::ostream &out, std::ostream &err)
    -> int {
    return guarded(err, [&] {
        const auto rows = sweep(config);
        std::size_t undefined = 0;
        for (const SweepRecord &r : rows) {
            undefined += std::isnan(r.f_av) ? 1 : 0;
        }
        write_output(config.output_path, format_sweep_csv(config, rows), out);
        if (undefined > 0) {
            err << "warning: " << undefined
                << " row(s) have every branch annihilated (success probability "
                   "0); f_av left blank\n";
        }
        return kExitOk;
    });
}

void BranchesConfig::validate() const {
    require_unit(p, "--p");
    require_unit(q_w, "--qw");
    try {
        alice.validate();
        bob.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
    if (!is_protected(scenario) && q_w != 0.0) {
        throw UsageError(std::string(scenario_name(scenario)) +
                         " has no weak measurement; --qw must be 0");
    }
}

auto format_branches_csv(const ProtocolResult &result) -> std::string {
    std::string text = "i,j,joint_prob,success_weight,branch_fidelity";
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            const std::string rc = std::to_string(r) + std::to_string(c);
            text += ",re_" + rc + ",im_" + rc;
        }
    }
    text += ",degenerate,postselected_weight\n";
    for (const BranchOutcome &br : result.branches) {
        text += std::to_string(br.i) + ',' + std::to_string(br.j) + ',' +
                format_number(br.joint_prob) + ',' +
                format_number(br.success_weight) + ',';
        if (!br.degenerate) {
            text += format_number(br.branch_fidelity);
        }
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                const cplx v = br.corrected(r, c);
                text += ',' + format_number(v.real()) + ',' + format_number(v.imag());
            }
        }
        text += br.degenerate ? ",1," : ",0,";
        text += format_number(br.postselected_weight) + '\n';
    }
    return text;
}

auto cmd_branches(const BranchesConfig &config, std::ostream &out,
                  std::ostream &err) -> int {
    return guarded(err, [&] {
        config.validate();
        ProtocolResult result;
        try {
            result = run_protocol(config.scenario, config.p, config.q_w,
                                  config.alice, config.bob);
        } catch (const DegenerateBranchError &e) {
            err << "error: every branch annihilated: " << e.what() << '\n';
            return kExitCheckFailed;
        }
        write_output("-", format_branches_csv(result), out);
        return kExitOk;
    });
}

void VerifyConfig::validate() const {
    if (grid_resolution < 2) {
        throw UsageError("--grid must be at least 2");
    }
    if (inputs_per_point < 1) {
        throw UsageError("--inputs must be at least 1");
    }
    try {
        quad.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

auto run_verify(const VerifyConfig &config) -> std::vector<CheckReport> {
    config.validate();
    InputSampler rng(config.seed);
    std::vector<CheckReport> reports;
    reports.push_back(check_success(config, rng));
    reports.push_back(check_suppression(config, rng));
    reports.push_back(check_unprotected(config));
    reports.push_back(check_eam());
    const auto samples = branch_samples(rng);
    reports.push_back(check_tables(samples));
    reports.push_back(check_probabilities(samples));
    reports.push_back(check_properties(config));
    reports.push_back(check_entropy());
    reports.push_back(check_convergence(config));
    return reports;
}

auto cmd_verify(const VerifyConfig &config, std::ostream &out, std::ostream &err)
    -> int {
    return guarded(err, [&] {
        const auto reports = run_verify(config);
        std::size_t failed = 0;
        for (const CheckReport &r : reports) {
            print_report(r, out);
            failed += r.passed ? 0 : 1;
        }
        out << (failed == 0 ? "verify: all " + std::to_string(reports.size()) +
                                  " checks passed\n"
                            : "verify: " + std::to_string(failed) + " of " +
                                  std::to_string(reports.size()) +
                                  " checks failed\n");
        out.flush();
        return failed == 0 ? kExitOk : kExitCheckFailed;
    });
}

auto entropy_curve(std::size_t p_steps) -> std::vector<EntropyRow> {
    if (p_steps < 2) {
        throw UsageError("--p-steps must be at least 2");
    }
    const DensityMatrix channel = prepare_channel();
    std::vector<EntropyRow> rows;
    for (const double p : linspace(0.0, 1.0, p_steps)) {
        rows.push_back(
            {p,
             entanglement_entropy_bob(
                 distribute(channel, Scenario::RecoveryQubitsADC, p).state),
             entanglement_entropy_bob(
                 distribute(channel, Scenario::AllQubitsADC, p).state)});
    }
    return rows;
}

auto cmd_entropy(std::size_t p_steps, const std::string &output_path,
                 std::ostream &out, std::ostream &err) -> int {
    return guarded(err, [&] {
        std::string text = "p,S_scenario_I,S_scenario_II\n";
        for (const EntropyRow &r : entropy_curve(p_steps)) {
            text += format_number(r.p) + ',' + format_number(r.s_recovery) + ',' +
                    format_number(r.s_all) + '\n';
        }
        write_output(output_path, text, out);
        return kExitOk;
    });
}

} // namespace bqt::cli
