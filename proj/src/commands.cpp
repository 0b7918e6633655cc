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
#include "singlet/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "singlet/primitives.hpp"
#include "singlet/quantum.hpp"

namespace singlet {

using nlohmann::json;

namespace {

double parse_double(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    double v = 0.0;
    const auto *last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return v;
}

std::vector<double> parse_list(std::string_view text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = text.find(',', start);
        out.push_back(parse_double(text.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

json vec_json(const Direction &d) { return json::array({d.x(), d.y(), d.z()}); }

json budget_json(SpinValue spin) {
    const auto b = randomness_budget(spin);
    return {{"n_lambda", b.n_lambda}, {"n_mu", b.n_mu}, {"n_nu", b.n_nu}};
}

json uniformity_json(std::span<const std::int64_t> counts) {
    if (counts.size() < 2) {
        return nullptr;
    }
    const auto r = chi_square_uniform(counts);
    return {{"counts", r.counts},
            {"chi_square", r.chi_square},
            {"degrees_of_freedom", r.degrees_of_freedom},
            {"p_value", r.p_value}};
}

json estimate_json(const CorrelationEstimate &e) {
    return {{"mean", e.mean}, {"std_error", e.std_error}, {"n_trials", e.n_trials}};
}

std::uint64_t pair_seed(std::uint64_t seed, int twice_s, int pair) {
    return mix64(seed ^ mix64((static_cast<std::uint64_t>(twice_s) << 20U) +
                              static_cast<std::uint64_t>(pair) + 1));
}

std::string csv_cell(const json &v) {
    if (v.is_string()) {
        return v.get<std::string>();
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    return v.dump();
}

std::string csv_from(const json &rows, const std::vector<std::string> &columns) {
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c) {
        os << (c ? "," : "") << columns[c];
    }
    os << '\n';
    for (const auto &row : rows) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
            os << (c ? "," : "") << csv_cell(row.at(columns[c]));
        }
        os << '\n';
    }
    return os.str();
}

std::string text_table(const json &rows, const std::vector<std::string> &columns) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::size_t> width(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        width[c] = columns[c].size();
    }
    for (const auto &row : rows) {
        auto &line = cells.emplace_back();
        for (std::size_t c = 0; c < columns.size(); ++c) {
            line.push_back(csv_cell(row.at(columns[c])));
            width[c] = std::max(width[c], line.back().size());
        }
    }
    std::ostringstream os;
    auto emit = [&](const std::vector<std::string> &line) {
        for (std::size_t c = 0; c < line.size(); ++c) {
            os << (c ? "  " : "") << std::setw(static_cast<int>(width[c]))
               << line[c];
        }
        os << '\n';
    };
    emit(columns);
    for (const auto &line : cells) {
        emit(line);
    }
    return os.str();
}

} // namespace

OutputFormat parse_format(std::string_view text) {
    if (text == "json") {
        return OutputFormat::Json;
    }
    if (text == "csv") {
        return OutputFormat::Csv;
    }
    if (text == "table") {
        return OutputFormat::Table;
    }
    throw std::invalid_argument("unknown format '" + std::string(text) +
                                "' (json, csv, table)");
}

Direction parse_direction(std::string_view text, bool spherical) {
    const auto v = parse_list(text);
    if (spherical) {
        if (v.size() != 2) {
            throw std::invalid_argument("spherical direction needs 'theta,phi'");
        }
        return Direction::from_spherical(v[0], v[1]);
    }
    if (v.size() != 3) {
        throw std::invalid_argument("direction needs 'x,y,z'");
    }
    return Direction::normalized({v[0], v[1], v[2]});
}

Rational parse_rational(std::string_view text) {
    auto bad = [&]() -> Rational {
        throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
    };
    auto to_int = [&](std::string_view part, std::int64_t &out) {
        const auto *last = part.data() + part.size();
        auto [ptr, ec] = std::from_chars(part.data(), last, out);
        return !part.empty() && ec == std::errc{} && ptr == last;
    };
    std::string_view body = text;
    bool negative = false;
    if (body.starts_with('-')) {
        negative = true;
        body.remove_prefix(1);
    }
    std::int64_t num = 0;
    std::int64_t den = 1;
    if (const auto slash = body.find('/'); slash != std::string_view::npos) {
        if (!to_int(body.substr(0, slash), num) || !to_int(body.substr(slash + 1), den) ||
            den <= 0 || num < 0) {
            return bad();
        }
    } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
        const auto whole = body.substr(0, dot);
        const auto frac = body.substr(dot + 1);
        std::int64_t w = 0;
        std::int64_t f = 0;
        if ((!whole.empty() && !to_int(whole, w)) || !to_int(frac, f) || w < 0 ||
            f < 0 || frac.size() > 15) {
            return bad();
        }
        for (std::size_t i = 0; i < frac.size(); ++i) {
            den *= 10;
        }
        num = w * den + f;
    } else if (!to_int(body, num) || num < 0) {
        return bad();
    }
    const Rational r(num, den);
    return negative ? -r : r;
}

std::uint64_t default_seed() {
    if (const char *env = std::getenv("SINGLET_SIM_SEED"); env != nullptr) {
        std::string_view text(env);
        std::uint64_t v = 0;
        int base = 10;
        if (text.starts_with("0x") || text.starts_with("0X")) {
            text.remove_prefix(2);
            base = 16;
        }
        const auto *last = text.data() + text.size();
        auto [ptr, ec] = std::from_chars(text.data(), last, v, base);
        if (ec != std::errc{} || ptr != last || text.empty()) {
            throw std::invalid_argument("SINGLET_SIM_SEED is not an integer");
        }
        return v;
    }
    return kDefaultSeed;
}

BinaryChain Perturbation::apply(const BinaryChain &chain) const {
    if (!active()) {
        return chain;
    }
    return perturb_chain(chain, step, bias_delta, coefficient_delta_twice);
}

void RunConfig::validate() const {
    if (trials < 1 || trials > kMaxTrials) {
        throw std::invalid_argument("trials must lie in [1, " +
                                    std::to_string(kMaxTrials) + "]");
    }
}

json outcome_json(HalfInteger value) {
    if (value.twice % 2 == 0) {
        return value.twice / 2;
    }
    return value.str();
}

json transcript_record(std::int64_t trial, const TrialOutcome &outcome) {
    return {{"trial", trial},
            {"alpha", outcome_json(outcome.alpha)},
            {"beta", outcome_json(outcome.beta)},
            {"cbits", outcome.cbits},
            {"f_bits", outcome.f_bits}};
}

json cmd_simulate(const RunConfig &config) {
    config.validate();
    const auto chain = config.perturbation.apply(build_chain(config.spin));
    const SimulationRequest request{config.a, config.b, config.trials, config.seed};
    const auto tally = simulate_parallel(chain, request, config.workers);
    const double cos_ab = config.a.dot(config.b);
    const double target = singlet_correlation(config.spin, cos_ab);
    const auto exact = exact_joint(chain, std::clamp(cos_ab, -1.0, 1.0));

    json report;
    report["schema"] = kReportSchema;
    report["command"] = "simulate";
    report["spin"] = config.spin.str();
    report["dimension"] = config.spin.dimension();
    report["communication_cost"] = comm_cost(config.spin);
    report["randomness_budget"] = budget_json(config.spin);
    report["a"] = vec_json(config.a);
    report["b"] = vec_json(config.b);
    report["cos_ab"] = cos_ab;
    report["trials"] = config.trials;
    report["seed"] = config.seed;
    if (config.perturbation.active()) {
        report["perturbation"] = {
            {"bias_delta", config.perturbation.bias_delta.str()},
            {"coefficient_delta", HalfInteger{config.perturbation.coefficient_delta_twice}.str()}};
    }
    if (tally.trials() >= 2) {
        const auto est = tally.moments.estimate();
        report["correlation"] = estimate_json(est);
        report["z_score"] = z_test(est, target);
    } else {
        report["correlation"] = nullptr;
        report["z_score"] = nullptr;
    }
    report["target"] = target;
    report["exact_correlation"] = exact.correlation();

    const auto support = outcome_support(config.spin);
    json outcomes = json::array();
    for (const auto v : support) {
        outcomes.push_back(outcome_json(v));
    }
    report["outcomes"] = outcomes;
    report["marginal_alpha"] = uniformity_json(tally.alpha_counts);
    report["marginal_beta"] = uniformity_json(tally.beta_counts);
    json joint = json::array();
    const auto d = support.size();
    const auto n = static_cast<double>(tally.trials());
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto count = tally.joint_counts[i * d + j];
            joint.push_back({{"alpha", outcome_json(support[i])},
                             {"beta", outcome_json(support[j])},
                             {"count", count},
                             {"probability", static_cast<double>(count) / n},
                             {"exact_probability",
                              exact.probability(support[i], support[j])}});
        }
    }
    report["joint"] = joint;
    report["out_of_support"] = tally.out_of_support;
    report["cbits_per_trial"] = {{"min", tally.min_cbits},
                                 {"max", tally.max_cbits},
                                 {"total", tally.cbits_sent}};
    return report;
}

void write_transcripts(std::ostream &os, const RunConfig &config,
                       std::int64_t count) {
    const auto chain = config.perturbation.apply(build_chain(config.spin));
    const RandomStream root(config.seed);
    for (std::int64_t t = 0; t < count; ++t) {
        auto stream = root.split(static_cast<std::uint64_t>(t));
        os << transcript_record(t, run_trial(config.a, config.b, chain, stream)).dump()
           << '\n';
    }
}

json cmd_verify(const VerifyConfig &config) {
    if (config.spin_max_twice < 1 || config.spin_max_twice > kEnumerationGuardTwiceS) {
        throw std::invalid_argument("spin-max must lie in [1/2, 20]");
    }
    if (config.pairs < 1) {
        throw std::invalid_argument("pairs must be >= 1");
    }
    if (config.trials < 2 || config.trials > kMaxTrials) {
        throw std::invalid_argument("trials must lie in [2, " +
                                    std::to_string(kMaxTrials) + "]");
    }
    RandomStream pair_stream(config.seed, 0xD1EC7105ULL);
    std::vector<std::pair<Direction, Direction>> pairs;
    for (int j = 0; j < config.pairs; ++j) {
        const auto a = sample_direction(pair_stream);
        const auto b = sample_direction(pair_stream);
        pairs.emplace_back(a, b);
    }

    json report;
    report["schema"] = kReportSchema;
    report["command"] = "verify";
    report["spin_max"] = HalfInteger{config.spin_max_twice}.str();
    report["pairs"] = config.pairs;
    report["trials"] = config.trials;
    report["seed"] = config.seed;
    report["tolerance"] = config.tolerance;
    report["z_max"] = config.z_max;
    report["p_min"] = config.p_min;
    if (config.perturbation.active()) {
        report["perturbation"] = {
            {"bias_delta", config.perturbation.bias_delta.str()},
            {"coefficient_delta",
             HalfInteger{config.perturbation.coefficient_delta_twice}.str()}};
    }
    bool all_passed = true;
    json spins = json::array();
    for (int twice_s = 1; twice_s <= config.spin_max_twice; ++twice_s) {
        const auto spin = make_spin(twice_s);
        const auto chain = config.perturbation.apply(build_chain(spin));
        const auto marginal = exact_marginal(chain);
        const Rational uniform(1, spin.dimension());
        bool marginal_ok = marginal.entries.size() ==
                           static_cast<std::size_t>(spin.dimension());
        for (const auto &[v, p] : marginal.entries) {
            marginal_ok = marginal_ok && p == uniform && support_index(spin, v) >= 0;
        }

        TrialTally pooled(spin);
        double max_error = 0.0;
        double max_z = 0.0;
        json pair_rows = json::array();
        for (int j = 0; j < config.pairs; ++j) {
            const auto &[a, b] = pairs[static_cast<std::size_t>(j)];
            const double cos_ab = std::clamp(a.dot(b), -1.0, 1.0);
            const double enumerated = exact_correlation(chain, cos_ab);
            const double closed = singlet_correlation(spin, cos_ab);
            const double error = std::abs(enumerated - closed);
            const auto tally = simulate_parallel(
                chain, {a, b, config.trials, pair_seed(config.seed, twice_s, j)},
                config.workers);
            const auto est = tally.moments.estimate();
            const double z = z_test(est, enumerated);
            pooled.merge(tally);
            max_error = std::max(max_error, error);
            max_z = std::max(max_z, z);
            pair_rows.push_back({{"cos_ab", cos_ab},
                                 {"enumeration", enumerated},
                                 {"closed_form", closed},
                                 {"error", error},
                                 {"monte_carlo", estimate_json(est)},
                                 {"z", z}});
        }
        const auto chi_alpha = chi_square_uniform(pooled.alpha_counts);
        const auto chi_beta = chi_square_uniform(pooled.beta_counts);
        const bool enum_ok = max_error <= config.tolerance;
        const bool mc_ok = max_z <= config.z_max;
        const bool chi_ok = chi_alpha.p_value > config.p_min &&
                            chi_beta.p_value > config.p_min;
        const bool support_ok = pooled.out_of_support == 0;
        const bool passed = marginal_ok && enum_ok && mc_ok && chi_ok && support_ok;
        all_passed = all_passed && passed;
        spins.push_back({{"spin", spin.str()},
                         {"dimension", spin.dimension()},
                         {"communication_cost", comm_cost(spin)},
                         {"randomness_budget", budget_json(spin)},
                         {"exact_marginal_uniform", marginal_ok},
                         {"max_enumeration_error", max_error},
                         {"enumeration_ok", enum_ok},
                         {"max_z", max_z},
                         {"monte_carlo_ok", mc_ok},
                         {"p_value_alpha", chi_alpha.p_value},
                         {"p_value_beta", chi_beta.p_value},
                         {"uniformity_ok", chi_ok},
                         {"out_of_support", pooled.out_of_support},
                         {"passed", passed},
                         {"pair_results", pair_rows}});
    }
    report["spins"] = spins;
    report["passed"] = all_passed;
    return report;
}

json cmd_cost_table(int spin_max_twice) {
    if (spin_max_twice < 0) {
        throw std::invalid_argument("spin-max must be non-negative");
    }
    json rows = json::array();
    for (int twice_s = 0; twice_s <= spin_max_twice; ++twice_s) {
        const auto spin = make_spin(twice_s);
        const auto budget = randomness_budget(spin);
        rows.push_back({{"s", spin.str()},
                        {"d", spin.dimension()},
                        {"binary", binary_string(spin.dimension())},
                        {"n", comm_cost(spin)},
                        {"n_lambda", budget.n_lambda},
                        {"n_mu", budget.n_mu},
                        {"n_nu", budget.n_nu}});
    }
    return {{"schema", kReportSchema}, {"command", "cost-table"}, {"rows", rows}};
}

json joint_to_json(const JointDistribution &table) {
    json rows = json::array();
    for (const auto &[k, p] : table.entries) {
        rows.push_back({{"alpha", outcome_json(k.first)},
                        {"beta", outcome_json(k.second)},
                        {"probability", p}});
    }
    return {{"cos_ab", table.cos_ab}, {"entries", rows}};
}

std::string joint_to_csv(const JointDistribution &table) {
    return csv_from(joint_to_json(table).at("entries"),
                    {"alpha", "beta", "probability"});
}

json cmd_compare_joint(SpinValue spin, const Direction &a, const Direction &b) {
    const double cos_ab = std::clamp(a.dot(b), -1.0, 1.0);
    const auto protocol = exact_joint(build_chain(spin), cos_ab);
    const auto quantum = quantum_joint(spin, a, b);
    const double inv_d = 1.0 / spin.dimension();
    auto marginal_deviation = [&](const JointDistribution &t) {
        double dev = 0.0;
        for (const auto &m : {t.marginal_alpha(), t.marginal_beta()}) {
            for (const auto v : outcome_support(spin)) {
                const auto it = m.find(v);
                dev = std::max(dev, std::abs((it == m.end() ? 0.0 : it->second) - inv_d));
            }
        }
        return dev;
    };
    const double protocol_corr = protocol.correlation();
    const double quantum_corr = quantum_correlation(spin, a, b);
    const double closed = singlet_correlation(spin, cos_ab);
    const double corr_gap = std::max({std::abs(protocol_corr - quantum_corr),
                                      std::abs(quantum.correlation() - quantum_corr),
                                      std::abs(protocol_corr - closed)});
    const double protocol_dev = marginal_deviation(protocol);
    const double quantum_dev = marginal_deviation(quantum);
    return {{"schema", kReportSchema},
            {"command", "compare-joint"},
            {"spin", spin.str()},
            {"a", vec_json(a)},
            {"b", vec_json(b)},
            {"cos_ab", cos_ab},
            {"protocol", joint_to_json(protocol)},
            {"quantum", joint_to_json(quantum)},
            {"total_variation", total_variation(protocol, quantum)},
            {"correlation",
             {{"protocol", protocol_corr},
              {"quantum", quantum_corr},
              {"closed_form", closed}}},
            {"marginal_deviation",
             {{"protocol", protocol_dev}, {"quantum", quantum_dev}}},
            {"marginals_agree", protocol_dev <= 1e-9 && quantum_dev <= 1e-9},
            {"correlation_agrees", corr_gap <= 1e-9}};
}

json cmd_primitives_check(const Direction &a, const Direction &b,
                          std::int64_t samples, std::uint64_t seed, int workers) {
    const auto battery = run_primitive_battery(a, b, samples, seed, workers);
    json checks = json::array();
    for (const auto &c : battery.checks) {
        checks.push_back({{"name", c.name},
                          {"estimate", c.estimate},
                          {"target", c.target},
                          {"std_error", c.std_error},
                          {"z", c.z},
                          {"pass", c.pass}});
    }
    return {{"schema", kReportSchema},
            {"command", "primitives-check"},
            {"a", vec_json(a)},
            {"b", vec_json(b)},
            {"samples", samples},
            {"seed", seed},
            {"z_max", battery.z_max},
            {"checks", checks},
            {"passed", battery.all_pass()}};
}

json error_report(std::string_view kind, std::string_view message) {
    return {{"schema", kReportSchema},
            {"error", {{"kind", std::string(kind)}, {"message", std::string(message)}}}};
}

std::string render(const json &report, OutputFormat format) {
    if (format == OutputFormat::Json || !report.contains("command")) {
        return report.dump(2) + "\n";
    }
    const auto command = report.at("command").get<std::string>();
    const bool csv = format == OutputFormat::Csv;
    auto tabulate = [&](const json &rows, const std::vector<std::string> &cols) {
        return csv ? csv_from(rows, cols) : text_table(rows, cols);
    };

    if (command == "cost-table") {
        return tabulate(report.at("rows"),
                        {"s", "d", "binary", "n", "n_lambda", "n_mu", "n_nu"});
    }
    if (command == "primitives-check") {
        return tabulate(report.at("checks"),
                        {"name", "estimate", "target", "std_error", "z", "pass"});
    }
    if (command == "verify") {
        std::string out = tabulate(report.at("spins"),
                                   {"spin", "communication_cost", "max_enumeration_error",
                                    "max_z", "p_value_alpha", "p_value_beta", "passed"});
        if (!csv) {
            out += std::string("verdict: ") +
                   (report.at("passed").get<bool>() ? "PASS" : "FAIL") + "\n";
        }
        return out;
    }
    if (command == "compare-joint") {
        json rows = json::array();
        for (const char *source : {"protocol", "quantum"}) {
            for (auto row : report.at(source).at("entries")) {
                row["source"] = source;
                rows.push_back(row);
            }
        }
        std::string out = tabulate(rows, {"source", "alpha", "beta", "probability"});
        if (!csv) {
            out += "total variation distance: " + report.at("total_variation").dump() + "\n";
        }
        return out;
    }
    if (command == "simulate") {
        std::string out =
            tabulate(report.at("joint"),
                     {"alpha", "beta", "count", "probability", "exact_probability"});
        if (!csv) {
            std::ostringstream os;
            os << "spin " << report.at("spin").get<std::string>() << ", cost "
               << report.at("communication_cost") << " cbit(s), trials "
               << report.at("trials") << "\n"
               << "correlation " << report.at("correlation").dump() << "\n"
               << "target " << report.at("target") << ", z " << report.at("z_score")
               << "\n";
            out += os.str();
        }
        return out;
    }
    return report.dump(2) + "\n";
}

} // namespace singlet
