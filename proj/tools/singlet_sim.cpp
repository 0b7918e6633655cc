// Copyright 2026 The singlet-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// singlet_sim: simulate, verify and inspect the classical simulation of
// spin-s singlet correlations.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>

#include "singlet/commands.hpp"

namespace {

using singlet::OutputFormat;

struct CommonFlags {
    std::string format{"json"};
    std::string out;
    int workers{0};
    std::optional<std::uint64_t> seed;
};

struct PerturbFlags {
    std::string bias{"0"};
    std::string coefficient{"0"};
    std::optional<std::size_t> step;

    [[nodiscard]] singlet::Perturbation parse() const {
        singlet::Perturbation p;
        p.bias_delta = singlet::parse_rational(bias);
        const auto coeff = singlet::parse_rational(coefficient) * singlet::Rational(2);
        if (coeff.den() != 1) {
            throw std::invalid_argument("coefficient perturbation must be a multiple of 1/2");
        }
        p.coefficient_delta_twice = static_cast<int>(coeff.num());
        p.step = step;
        return p;
    }
};

void add_common(CLI::App *cmd, CommonFlags &flags, bool with_seed) {
    cmd->add_option("--format", flags.format, "json, csv or table")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd->add_option("--out", flags.out, "Write the report to FILE");
    if (with_seed) {
        cmd->add_option("--seed", flags.seed,
                        "64-bit seed (default: $SINGLET_SIM_SEED or 0x51461E7)");
        cmd->add_option("--workers", flags.workers,
                        "Worker threads; 0 uses all available");
    }
}

void add_perturb(CLI::App *cmd, PerturbFlags &flags) {
    cmd->add_option("--perturb-bias", flags.bias,
                    "Shift every f-bit bias by this amount (harness self-test)");
    cmd->add_option("--perturb-coefficient", flags.coefficient,
                    "Shift step coefficients by a multiple of 1/2 (harness self-test)");
    cmd->add_option("--perturb-step", flags.step,
                    "Apply perturbations to this chain step only");
}

void emit(const nlohmann::json &report, const CommonFlags &flags) {
    const auto text = singlet::render(report, singlet::parse_format(flags.format));
    if (flags.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(flags.out);
    if (!os) {
        throw std::runtime_error("cannot open output file " + flags.out);
    }
    os << text;
}

std::uint64_t seed_or_default(const CommonFlags &flags) {
    return flags.seed ? *flags.seed : singlet::default_seed();
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Classical simulation of spin-s singlet correlations"};
    app.require_subcommand(1);

    CommonFlags common;
    PerturbFlags perturb;
    std::string spin_text;
    std::string spin_max_text{"15/2"};
    std::string a_text{"0,0,1"};
    std::string b_text{"0,0,1"};
    bool spherical = false;
    std::int64_t trials = 1'000'000;
    int pairs = 20;
    double tol = 1e-10;
    std::string dump_path;

    auto *simulate = app.add_subcommand("simulate", "Run Monte Carlo trials of the protocol");
    simulate->add_option("--spin", spin_text, "Spin s, e.g. 3, 3/2 or 1.5")->required();
    simulate->add_option("--a", a_text, "Alice's direction x,y,z");
    simulate->add_option("--b", b_text, "Bob's direction x,y,z");
    simulate->add_flag("--spherical", spherical, "Read directions as theta,phi");
    simulate->add_option("--trials", trials, "Number of trials");
    simulate->add_option("--dump-transcripts", dump_path,
                         "Write one JSON line per trial to FILE");
    add_common(simulate, common, true);
    add_perturb(simulate, perturb);

    auto *verify = app.add_subcommand("verify", "Check protocol against exact oracles");
    verify->add_option("--spin-max", spin_max_text, "Largest spin checked (<= 20)");
    verify->add_option("--pairs", pairs, "Random direction pairs per spin");
    auto *verify_trials =
        verify->add_option("--trials", trials, "Monte Carlo trials per pair (default 100000)");
    verify->add_option("--tol", tol, "Enumeration vs closed-form tolerance");
    add_common(verify, common, true);
    add_perturb(verify, perturb);

    auto *cost = app.add_subcommand("cost-table", "Communication and randomness per spin");
    cost->add_option("--spin-max", spin_max_text, "Largest spin listed");
    add_common(cost, common, false);

    auto *compare = app.add_subcommand("compare-joint",
                                       "Protocol joint law next to the quantum one");
    compare->add_option("--spin", spin_text, "Spin s")->required();
    compare->add_option("--a", a_text, "Alice's direction x,y,z");
    compare->add_option("--b", b_text, "Bob's direction x,y,z");
    compare->add_flag("--spherical", spherical, "Read directions as theta,phi");
    add_common(compare, common, false);

    auto *primitives = app.add_subcommand("primitives-check",
                                          "Monte Carlo battery for Sgn and f-bit statistics");
    primitives->add_option("--a", a_text, "Direction a x,y,z");
    primitives->add_option("--b", b_text, "Direction b x,y,z");
    primitives->add_flag("--spherical", spherical, "Read directions as theta,phi");
    primitives->add_option("--trials", trials, "Samples (default 1000000)");
    add_common(primitives, common, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        std::cout << singlet::error_report("usage", e.what()).dump(2) << "\n";
        return 2;
    }

    const auto start = std::chrono::steady_clock::now();
    int status = 0;
    try {
        if (*simulate) {
            singlet::RunConfig config;
            config.spin = singlet::parse_spin(spin_text);
            config.a = singlet::parse_direction(a_text, spherical);
            config.b = singlet::parse_direction(b_text, spherical);
            config.trials = trials;
            config.seed = seed_or_default(common);
            config.workers = common.workers;
            config.format = singlet::parse_format(common.format);
            config.perturbation = perturb.parse();
            config.validate();
            emit(singlet::cmd_simulate(config), common);
            if (!dump_path.empty()) {
                std::ofstream os(dump_path);
                if (!os) {
                    throw std::runtime_error("cannot open transcript file " + dump_path);
                }
                singlet::write_transcripts(os, config, config.trials);
            }
        } else if (*verify) {
            singlet::VerifyConfig config;
            config.spin_max_twice = singlet::parse_spin(spin_max_text).twice_s();
            config.pairs = pairs;
            if (verify_trials->count() > 0) {
                config.trials = trials;
            }
            config.seed = seed_or_default(common);
            config.workers = common.workers;
            config.tolerance = tol;
            config.perturbation = perturb.parse();
            const auto report = singlet::cmd_verify(config);
            emit(report, common);
            status = report.at("passed").get<bool>() ? 0 : 1;
        } else if (*cost) {
            emit(singlet::cmd_cost_table(singlet::parse_spin(spin_max_text).twice_s()),
                 common);
        } else if (*compare) {
            const auto report = singlet::cmd_compare_joint(
                singlet::parse_spin(spin_text), singlet::parse_direction(a_text, spherical),
                singlet::parse_direction(b_text, spherical));
            emit(report, common);
            status = report.at("marginals_agree").get<bool>() &&
                             report.at("correlation_agrees").get<bool>()
                         ? 0
                         : 1;
        } else if (*primitives) {
            const auto report = singlet::cmd_primitives_check(
                singlet::parse_direction(a_text, spherical),
                singlet::parse_direction(b_text, spherical), trials,
                seed_or_default(common), common.workers);
            emit(report, common);
            status = report.at("passed").get<bool>() ? 0 : 1;
        }
    } catch (const std::invalid_argument &e) {
        std::cout << singlet::error_report("invalid_argument", e.what()).dump(2) << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cout << singlet::error_report("runtime_error", e.what()).dump(2) << "\n";
        return 3;
    }
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    std::cerr << "wall time: " << elapsed.count() << " s\n";
    return status;
}
