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

#include "config.hpp"
#include "core.hpp"
#include "oracle.hpp"
#include "rates.hpp"

#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fdcran {

/// Agreement thresholds applied by verify_table.
inline constexpr double kUplinkOracleTolerance = 1e-3;
inline constexpr double kPowerSearchTolerance = 1e-3;
inline constexpr double kTimeShareTolerance = 1e-6;

struct SweepRow {
    std::string sweep_var;
    double value = 0.0;
    SchemeId scheme = SchemeId::HdScp;
    double r_u = 0.0;
    double r_d = 0.0;
    double r_eq = 0.0;
    std::optional<double> sigma_u_sq;
    std::optional<double> sigma_d_sq;
    std::optional<double> p_u_star;
    std::optional<double> p_d_star;
    std::optional<double> f_star;
    std::optional<double> oracle_r_u;
    std::optional<double> oracle_r_eq;

    bool operator==(const SweepRow &) const = default;
};

struct SweepTable {
    std::vector<SweepRow> rows;
    bool has_oracle = false; ///< rows carry the oracle_* columns

    bool operator==(const SweepTable &) const = default;
};

namespace detail {

inline void attach_oracle(SweepRow &row, const SystemParams &params, const SweepSpec &spec)
{
    const auto &num = spec.numerics;
    switch (row.scheme) {
    case SchemeId::HdScp: row.oracle_r_eq = oracle::numeric_time_share(row.r_u, row.r_d); break;
    case SchemeId::HdCran:
        row.oracle_r_eq = oracle::numeric_time_share(row.r_u, row.r_d);
        row.oracle_r_u = row.sigma_u_sq ? oracle::circulant_uplink_rate(params.alpha, params.p_u_max, *row.sigma_u_sq,
                                                                        num.oracle_cells)
                                        : 0.0;
        break;
    case SchemeId::FdScp:
    case SchemeId::FdScpSic:
        row.oracle_r_eq =
            oracle::exhaustive_power_opt(params, uses_sic(row.scheme) ? SicMode::Sic : SicMode::TreatAsNoise,
                                         num.oracle_grid)
                .r_eq;
        break;
    case SchemeId::FdCran:
    case SchemeId::FdCranSic: {
        const auto precoder = zf_precoder(params.alpha, num.panels);
        const auto sic = uses_sic(row.scheme) ? SicMode::Sic : SicMode::TreatAsNoise;
        row.oracle_r_u =
            oracle::fd_cran_uplink_check(params, {*row.p_u_star, *row.p_d_star}, precoder, num.oracle_cells).rate;
        if (num.full_power)
            row.oracle_r_eq = CranModel(params, precoder).evaluate(PowerAllocation::full(params), sic).r_eq;
        else
            row.oracle_r_eq = oracle::exhaustive_power_opt(params, precoder, sic, num.oracle_grid).r_eq;
        break;
    }
    }
}

} // namespace detail

/// Evaluates every scheme at every sweep value. Rows are ordered by sweep
/// value, then by scheme in SchemeId order.
inline SweepTable run_sweep(const SweepSpec &spec)
{
    spec.validate();
    const SolverOptions opt = spec.numerics.solver();
    SweepTable table;
    table.has_oracle = spec.numerics.verify;
    for (double value : spec.range.values()) {
        ParamsConfig cfg = spec.base;
        apply_sweep_value(spec.var, value, cfg);
        const SystemParams params = cfg.to_params();
        for (SchemeId scheme : spec.schemes) {
            const RateResult res = compute_scheme(scheme, params, opt);
            SweepRow row;
            row.sweep_var = std::string(to_string(spec.var));
            row.value = value;
            row.scheme = scheme;
            row.r_u = res.r_u;
            row.r_d = res.r_d;
            row.r_eq = res.r_eq;
            row.sigma_u_sq = res.diagnostic("sigma_u_sq");
            row.sigma_d_sq = res.diagnostic("sigma_d_sq");
            row.p_u_star = res.diagnostic("p_u_star");
            row.p_d_star = res.diagnostic("p_d_star");
            row.f_star = res.diagnostic("f_star");
            if (spec.numerics.verify)
                detail::attach_oracle(row, params, spec);
            table.rows.push_back(std::move(row));
        }
    }
    return table;
}

/// Human-readable description of every row that disagrees with its oracle.
inline std::vector<std::string> verify_table(const SweepTable &table)
{
    std::vector<std::string> failures;
    for (const auto &row : table.rows) {
        auto fail = [&](const std::string &what, double got, double ref) {
            std::ostringstream msg;
            msg.precision(10);
            msg << to_string(row.scheme) << " at " << row.sweep_var << "=" << row.value << ": " << what << " " << got
                << " vs oracle " << ref;
            failures.push_back(msg.str());
        };
        if (row.oracle_r_u && std::abs(*row.oracle_r_u - row.r_u) > kUplinkOracleTolerance)
            fail("r_u", row.r_u, *row.oracle_r_u);
        if (row.oracle_r_eq) {
            if (is_full_duplex(row.scheme)) {
                if (row.r_eq < *row.oracle_r_eq - kPowerSearchTolerance)
                    fail("r_eq", row.r_eq, *row.oracle_r_eq);
            } else if (std::abs(row.r_eq - *row.oracle_r_eq) > kTimeShareTolerance) {
                fail("r_eq", row.r_eq, *row.oracle_r_eq);
            }
        }
    }
    return failures;
}

} // namespace fdcran
