// SPDX-License-Identifier: Apache-2.0
//
// fdcran - achievable rates of half/full-duplex cellular systems with C-RAN
// Copyright (C) 2026 The fdcran authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end.
//
//   fdcran compute [--config FILE] [--preset fig2|fig3] [--alpha A ...] [--scheme S ...]
//   fdcran sweep   [--config FILE] [--preset fig2|fig3] --out CSV [--svg SVG] [--verify]
//
// Exit codes: 0 ok, 2 configuration error, 3 numeric-domain error,
// 4 oracle verification failure.

#include "fdcran.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitVerify = 4;

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw fdcran::ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct CommonOptions {
    std::string config_path;
    std::string preset;
    std::optional<int> panels;
    std::optional<int> grid;
};

void add_common(CLI::App *cmd, CommonOptions &opt)
{
    cmd->add_option("--config", opt.config_path, "key = value configuration file");
    cmd->add_option("--preset", opt.preset, "start from a built-in preset")->check(CLI::IsMember({"fig2", "fig3"}));
    cmd->add_option("--panels", opt.panels, "Simpson panels on [0, 1] (multiple of 4)");
    cmd->add_option("--grid", opt.grid, "power-search grid points per axis");
}

fdcran::SweepSpec load_spec(const CommonOptions &opt)
{
    fdcran::SweepSpec spec = opt.preset.empty() ? fdcran::preset_fig2() : fdcran::preset(opt.preset);
    if (!opt.config_path.empty())
        spec = fdcran::parse_config(read_file(opt.config_path), spec);
    if (opt.panels)
        spec.numerics.panels = *opt.panels;
    if (opt.grid)
        spec.numerics.grid = *opt.grid;
    spec.validate();
    return spec;
}

nlohmann::ordered_json to_json(fdcran::SchemeId id, const fdcran::RateResult &r)
{
    nlohmann::ordered_json j;
    j["scheme"] = std::string(fdcran::to_string(id));
    j["r_u"] = r.r_u;
    j["r_d"] = r.r_d;
    j["r_eq"] = r.r_eq;
    j["diagnostics"] = nlohmann::ordered_json::object();
    for (const auto &[k, v] : r.diagnostics)
        j["diagnostics"][k] = v;
    return j;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Per-cell uplink/downlink/equal rates of half- and full-duplex cellular systems "
                 "with single-cell processing or C-RAN on the Wyner model"};
    app.require_subcommand(1);

    CommonOptions compute_opt;
    std::vector<std::string> scheme_names;
    struct Overrides {
        std::optional<double> alpha, beta_du, beta_ud, gamma_du, gamma_ud, p_u_db, p_d_db, c_u, c_d;
    } ov;
    bool full_power = false;
    auto *compute = app.add_subcommand("compute", "rates of one parameter point, printed as JSON");
    add_common(compute, compute_opt);
    compute->add_option("--alpha", ov.alpha);
    compute->add_option("--beta-du", ov.beta_du);
    compute->add_option("--beta-ud", ov.beta_ud);
    compute->add_option("--gamma-du", ov.gamma_du);
    compute->add_option("--gamma-ud", ov.gamma_ud);
    compute->add_option("--p-u-db", ov.p_u_db);
    compute->add_option("--p-d-db", ov.p_d_db);
    compute->add_option("--c-u", ov.c_u);
    compute->add_option("--c-d", ov.c_d);
    compute->add_option("--scheme", scheme_names, "scheme(s) to evaluate (default: all)");
    compute->add_flag("--full-power", full_power, "operate FD C-RAN at the power budgets");

    CommonOptions sweep_opt;
    std::string out_csv, out_svg;
    bool verify = false;
    auto *sweep = app.add_subcommand("sweep", "parameter sweep written as CSV (and optionally SVG)");
    add_common(sweep, sweep_opt);
    sweep->add_option("--out", out_csv, "CSV output path")->required();
    sweep->add_option("--svg", out_svg, "SVG chart output path");
    sweep->add_flag("--verify", verify, "append oracle columns and check agreement");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*compute) {
            fdcran::SweepSpec spec = load_spec(compute_opt);
            auto &b = spec.base;
            for (auto [field, value] : {std::pair{&b.alpha, ov.alpha}, {&b.beta_du, ov.beta_du},
                                        {&b.beta_ud, ov.beta_ud}, {&b.gamma_du, ov.gamma_du},
                                        {&b.gamma_ud, ov.gamma_ud}, {&b.p_u_db, ov.p_u_db},
                                        {&b.p_d_db, ov.p_d_db}, {&b.c_u, ov.c_u}, {&b.c_d, ov.c_d}})
                if (value)
                    *field = *value;
            if (full_power)
                spec.numerics.full_power = true;
            spec.validate();
            fdcran::warn_gamma_du_once(b.gamma_du);

            std::vector<fdcran::SchemeId> schemes;
            for (const auto &name : scheme_names) {
                const auto id = fdcran::parse_scheme(name);
                if (!id)
                    throw fdcran::ConfigError("unknown scheme '" + name + "'", 0, "--scheme");
                schemes.push_back(*id);
            }
            if (schemes.empty())
                schemes.assign(fdcran::kAllSchemes.begin(), fdcran::kAllSchemes.end());

            const auto params = b.to_params();
            nlohmann::ordered_json out;
            out["params"] = {{"alpha", params.alpha},       {"beta_du", params.beta_du},
                             {"beta_ud", params.beta_ud},   {"gamma_du", params.gamma_du},
                             {"gamma_ud", params.gamma_ud}, {"p_u_max", params.p_u_max},
                             {"p_d_max", params.p_d_max},   {"c_u", params.c_u},
                             {"c_d", params.c_d}};
            out["results"] = nlohmann::ordered_json::array();
            for (auto id : schemes)
                out["results"].push_back(to_json(id, fdcran::compute_scheme(id, params, spec.numerics.solver())));
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        fdcran::SweepSpec spec = load_spec(sweep_opt);
        if (verify)
            spec.numerics.verify = true;
        const auto table = fdcran::run_sweep(spec);
        fdcran::emit_csv(table, out_csv);
        if (!out_svg.empty()) {
            fdcran::PlotSpec plot;
            plot.title = sweep_opt.preset.empty() ? "equal per-cell rate" : "equal per-cell rate (" + sweep_opt.preset + ")";
            fdcran::emit_svg(table, out_svg, plot);
        }
        if (spec.numerics.verify) {
            const auto failures = fdcran::verify_table(table);
            for (const auto &f : failures)
                std::cerr << "verification failed: " << f << "\n";
            if (!failures.empty())
                return kExitVerify;
        }
        return 0;
    } catch (const fdcran::ConfigError &e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitConfig;
    } catch (const fdcran::NumericDomainError &e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
