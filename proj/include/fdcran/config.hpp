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

#pragma once

#include "core.hpp"
#include "rates.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdcran {

/// Malformed sweep configuration. `line` is 0 when the error is not tied to
/// a specific line of the input.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string &msg, int line = 0, std::string field = {})
        : std::runtime_error(format(msg, line, field)), line_(line), field_(std::move(field))
    {
    }
    int line() const { return line_; }
    const std::string &field() const { return field_; }

private:
    static std::string format(const std::string &msg, int line, const std::string &field)
    {
        std::string s = "config error";
        if (line > 0)
            s += " at line " + std::to_string(line);
        if (!field.empty())
            s += " (" + field + ")";
        return s + ": " + msg;
    }
    int line_;
    std::string field_;
};

enum class SweepVar { CuCdJoint, GammaUd, Alpha, BetaDu, BetaUd, PDbJoint };

inline constexpr std::array<std::pair<SweepVar, std::string_view>, 6> kSweepVarNames{{
    {SweepVar::CuCdJoint, "c_u_c_d_joint"},
    {SweepVar::GammaUd, "gamma_ud"},
    {SweepVar::Alpha, "alpha"},
    {SweepVar::BetaDu, "beta_du"},
    {SweepVar::BetaUd, "beta_ud"},
    {SweepVar::PDbJoint, "p_db_joint"},
}};

inline std::string_view to_string(SweepVar v)
{
    for (const auto &[id, name] : kSweepVarNames)
        if (id == v)
            return name;
    return "?";
}

/// System parameters as written in a config file: powers in dB, gains as
/// amplitudes, fronthaul in bits/s/Hz.
struct ParamsConfig {
    double alpha = 0.4;
    double beta_du = 0.4;
    double beta_ud = 0.04;
    double gamma_du = 0.0;
    double gamma_ud = 4.0;
    double p_u_db = 20.0;
    double p_d_db = 20.0;
    double c_u = 10.0;
    double c_d = 10.0;

    bool operator==(const ParamsConfig &) const = default;

    SystemParams to_params() const
    {
        return {alpha, beta_du, beta_ud, gamma_du, gamma_ud, db_to_linear(p_u_db), db_to_linear(p_d_db), c_u, c_d};
    }
};

struct SweepRange {
    double start = 0.0;
    double stop = 12.0;
    double step = 0.5;

    bool operator==(const SweepRange &) const = default;

    /// Inclusive grid start, start + step, ..., up to stop.
    std::vector<double> values() const
    {
        const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        std::vector<double> v(n);
        for (long i = 0; i < n; ++i)
            v[i] = start + i * step;
        return v;
    }
};

struct NumericsConfig {
    int panels = kDefaultPanels;
    int grid = 64;
    int refine_passes = 2;
    int polish_iterations = 32;
    bool full_power = false;
    bool verify = false;
    int oracle_grid = 512;
    int oracle_cells = 512;

    bool operator==(const NumericsConfig &) const = default;

    SolverOptions solver() const
    {
        SolverOptions opt;
        opt.panels = panels;
        opt.search.grid = grid;
        opt.search.refine_passes = refine_passes;
        opt.search.polish_iterations = polish_iterations;
        opt.search.full_power = full_power;
        return opt;
    }
};

/// Declarative parameter sweep: every scheme is evaluated at every value of
/// one swept variable, the other parameters fixed at `base`.
struct SweepSpec {
    ParamsConfig base;
    SweepVar var = SweepVar::CuCdJoint;
    SweepRange range;
    std::vector<SchemeId> schemes{kAllSchemes.begin(), kAllSchemes.end()};
    NumericsConfig numerics;

    bool operator==(const SweepSpec &) const = default;

    void validate() const
    {
        if (!(range.step > 0.0))
            throw ConfigError("step must be > 0", 0, "sweep.step");
        if (!(range.start <= range.stop))
            throw ConfigError("start must not exceed stop", 0, "sweep.start");
        if (schemes.empty())
            throw ConfigError("at least one scheme is required", 0, "sweep.schemes");
        if (numerics.panels < 4 || numerics.panels % 4 != 0)
            throw ConfigError("panels must be a positive multiple of 4", 0, "numerics.panels");
        if (numerics.grid < 2)
            throw ConfigError("grid must be >= 2", 0, "numerics.grid");
        if (numerics.refine_passes < 0)
            throw ConfigError("refine_passes must be >= 0", 0, "numerics.refine_passes");
        if (numerics.polish_iterations < 0)
            throw ConfigError("polish_iterations must be >= 0", 0, "numerics.polish_iterations");
        if (numerics.oracle_grid < 64)
            throw ConfigError("oracle_grid must be >= 64", 0, "numerics.oracle_grid");
        if (numerics.oracle_cells < 8)
            throw ConfigError("oracle_cells must be >= 8", 0, "numerics.oracle_cells");
        base.to_params().validate();
    }
};

/// Sets the swept variable of `cfg` to `value`.
inline void apply_sweep_value(SweepVar var, double value, ParamsConfig &cfg)
{
    switch (var) {
    case SweepVar::CuCdJoint: cfg.c_u = cfg.c_d = value; break;
    case SweepVar::GammaUd: cfg.gamma_ud = value; break;
    case SweepVar::Alpha: cfg.alpha = value; break;
    case SweepVar::BetaDu: cfg.beta_du = value; break;
    case SweepVar::BetaUd: cfg.beta_ud = value; break;
    case SweepVar::PDbJoint: cfg.p_u_db = cfg.p_d_db = value; break;
    }
}

/// Fronthaul sweep at P = 20 dB, alpha = beta_du = 0.4, beta_ud = 0.04, gamma_ud = 4.
inline SweepSpec preset_fig2()
{
    SweepSpec s;
    s.var = SweepVar::CuCdJoint;
    s.range = {0.0, 12.0, 0.5};
    return s;
}

/// Intra-cell U-D interference sweep with C_u = C_d = 10.
inline SweepSpec preset_fig3()
{
    SweepSpec s;
    s.var = SweepVar::GammaUd;
    s.range = {0.0, 8.0, 0.25};
    return s;
}

inline SweepSpec preset(std::string_view name)
{
    if (name == "fig2")
        return preset_fig2();
    if (name == "fig3")
        return preset_fig3();
    throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig2 or fig3)", 0, "--preset");
}

namespace detail {

inline std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::string format_double(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace detail

/// Parses `key = value` lines into `spec`. Keys are dotted (`params.alpha`);
/// a `[section]` line prefixes the keys that follow it. `#` starts a comment.
inline SweepSpec parse_config(std::string_view text, SweepSpec spec = preset_fig2())
{
    using Setter = std::function<void(std::string_view, int, const std::string &)>;

    auto as_double = [](std::string_view v, int line, const std::string &key) {
        double out = 0.0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
            throw ConfigError("expected a number, got '" + std::string(v) + "'", line, key);
        return out;
    };
    auto as_int = [](std::string_view v, int line, const std::string &key) {
        int out = 0;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
        if (ec != std::errc{} || ptr != v.data() + v.size())
            throw ConfigError("expected an integer, got '" + std::string(v) + "'", line, key);
        return out;
    };
    auto as_bool = [](std::string_view v, int line, const std::string &key) {
        if (v == "true" || v == "1")
            return true;
        if (v == "false" || v == "0")
            return false;
        throw ConfigError("expected true or false, got '" + std::string(v) + "'", line, key);
    };

    auto num = [&](double &field) -> Setter {
        return [&](std::string_view v, int line, const std::string &key) { field = as_double(v, line, key); };
    };
    auto integer = [&](int &field) -> Setter {
        return [&](std::string_view v, int line, const std::string &key) { field = as_int(v, line, key); };
    };
    auto flag = [&](bool &field) -> Setter {
        return [&](std::string_view v, int line, const std::string &key) { field = as_bool(v, line, key); };
    };

    const std::map<std::string, Setter, std::less<>> setters{
        {"params.alpha", num(spec.base.alpha)},
        {"params.beta_du", num(spec.base.beta_du)},
        {"params.beta_ud", num(spec.base.beta_ud)},
        {"params.gamma_du", num(spec.base.gamma_du)},
        {"params.gamma_ud", num(spec.base.gamma_ud)},
        {"params.p_u_db", num(spec.base.p_u_db)},
        {"params.p_d_db", num(spec.base.p_d_db)},
        {"params.c_u", num(spec.base.c_u)},
        {"params.c_d", num(spec.base.c_d)},
        {"sweep.var",
         [&](std::string_view v, int line, const std::string &key) {
             for (const auto &[id, name] : kSweepVarNames)
                 if (name == v) {
                     spec.var = id;
                     return;
                 }
             throw ConfigError("unknown sweep variable '" + std::string(v) + "'", line, key);
         }},
        {"sweep.start", num(spec.range.start)},
        {"sweep.stop", num(spec.range.stop)},
        {"sweep.step", num(spec.range.step)},
        {"sweep.schemes",
         [&](std::string_view v, int line, const std::string &key) {
             std::vector<SchemeId> out;
             std::size_t pos = 0;
             while (pos <= v.size()) {
                 const auto comma = std::min(v.find(',', pos), v.size());
                 const auto item = detail::trim(v.substr(pos, comma - pos));
                 if (!item.empty()) {
                     const auto id = parse_scheme(item);
                     if (!id)
                         throw ConfigError("unknown scheme '" + std::string(item) + "'", line, key);
                     if (std::find(out.begin(), out.end(), *id) == out.end())
                         out.push_back(*id);
                 }
                 pos = comma + 1;
             }
             if (out.empty())
                 throw ConfigError("at least one scheme is required", line, key);
             std::sort(out.begin(), out.end());
             spec.schemes = std::move(out);
         }},
        {"numerics.panels", integer(spec.numerics.panels)},
        {"numerics.grid", integer(spec.numerics.grid)},
        {"numerics.refine_passes", integer(spec.numerics.refine_passes)},
        {"numerics.polish_iterations", integer(spec.numerics.polish_iterations)},
        {"numerics.full_power", flag(spec.numerics.full_power)},
        {"numerics.verify", flag(spec.numerics.verify)},
        {"numerics.oracle_grid", integer(spec.numerics.oracle_grid)},
        {"numerics.oracle_cells", integer(spec.numerics.oracle_cells)},
    };

    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", line_no);
            section = std::string(detail::trim(line.substr(1, line.size() - 2)));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError("expected 'key = value'", line_no);
        std::string key(detail::trim(line.substr(0, eq)));
        if (!section.empty())
            key = section + "." + key;
        const auto value = detail::trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end())
            throw ConfigError("unknown key", line_no, key);
        it->second(value, line_no, key);
    }
    spec.validate();
    warn_gamma_du_once(spec.base.gamma_du);
    return spec;
}

/// Canonical text form; parse_config(serialize_config(s)) == s.
inline std::string serialize_config(const SweepSpec &spec)
{
    using detail::format_double;
    std::ostringstream out;
    out << "[params]\n"
        << "alpha = " << format_double(spec.base.alpha) << "\n"
        << "beta_du = " << format_double(spec.base.beta_du) << "\n"
        << "beta_ud = " << format_double(spec.base.beta_ud) << "\n"
        << "gamma_du = " << format_double(spec.base.gamma_du) << "\n"
        << "gamma_ud = " << format_double(spec.base.gamma_ud) << "\n"
        << "p_u_db = " << format_double(spec.base.p_u_db) << "\n"
        << "p_d_db = " << format_double(spec.base.p_d_db) << "\n"
        << "c_u = " << format_double(spec.base.c_u) << "\n"
        << "c_d = " << format_double(spec.base.c_d) << "\n\n"
        << "[sweep]\n"
        << "var = " << to_string(spec.var) << "\n"
        << "start = " << format_double(spec.range.start) << "\n"
        << "stop = " << format_double(spec.range.stop) << "\n"
        << "step = " << format_double(spec.range.step) << "\n"
        << "schemes = ";
    for (std::size_t i = 0; i < spec.schemes.size(); ++i)
        out << (i ? ", " : "") << to_string(spec.schemes[i]);
    out << "\n\n"
        << "[numerics]\n"
        << "panels = " << spec.numerics.panels << "\n"
        << "grid = " << spec.numerics.grid << "\n"
        << "refine_passes = " << spec.numerics.refine_passes << "\n"
        << "polish_iterations = " << spec.numerics.polish_iterations << "\n"
        << "full_power = " << (spec.numerics.full_power ? "true" : "false") << "\n"
        << "verify = " << (spec.numerics.verify ? "true" : "false") << "\n"
        << "oracle_grid = " << spec.numerics.oracle_grid << "\n"
        << "oracle_cells = " << spec.numerics.oracle_cells << "\n";
    return out.str();
}

} // namespace fdcran
