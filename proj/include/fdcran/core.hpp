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

#include <algorithm>
#include <array>
#include <cmath>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fdcran {

/// Raised when a computation leaves the real, finite domain it is defined on.
class NumericDomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Shannon capacity log2(1 + s) in bits/s/Hz.
inline double shannon_c(double s)
{
    if (!std::isfinite(s) || s < 0.0)
        throw NumericDomainError("shannon_c: SINR must be finite and non-negative, got " + std::to_string(s));
    return std::log2(1.0 + s);
}

/// min(a, max(b, c)). The middle argument may be negative (t2 - R_u under SIC).
inline double q_clamp(double a, double b, double c)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c))
        throw NumericDomainError("q_clamp: non-finite argument");
    return std::min(a, std::max(b, c));
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Deterministic parameters of the extended Wyner model.
///
/// Gains are amplitudes (power gain is the square). Powers are linear, on the
/// unit noise-power scale. Fronthaul capacities are in bits/s/Hz; use a large
/// finite value (e.g. 1000) for an ideal fronthaul.
struct SystemParams {
    double alpha = 0.0;    ///< inter-cell channel
    double beta_du = 0.0;  ///< inter-cell downlink-to-uplink interference
    double beta_ud = 0.0;  ///< inter-cell uplink-to-downlink interference
    double gamma_du = 0.0; ///< RU self-interference; ideally cancelled, never enters a rate
    double gamma_ud = 0.0; ///< intra-cell uplink-to-downlink interference
    double p_u_max = 0.0;
    double p_d_max = 0.0;
    double c_u = 0.0;
    double c_d = 0.0;

    bool operator==(const SystemParams &) const = default;

    void validate() const
    {
        const std::array<std::pair<const char *, double>, 9> fields{{
            {"alpha", alpha},
            {"beta_du", beta_du},
            {"beta_ud", beta_ud},
            {"gamma_du", gamma_du},
            {"gamma_ud", gamma_ud},
            {"p_u_max", p_u_max},
            {"p_d_max", p_d_max},
            {"c_u", c_u},
            {"c_d", c_d},
        }};
        for (const auto &[name, v] : fields)
            if (!std::isfinite(v) || v < 0.0)
                throw std::invalid_argument(std::string("SystemParams.") + name +
                                            " must be finite and >= 0, got " + std::to_string(v));
    }
};

/// Emits a single notice per process that gamma_du has no effect on any rate.
inline void warn_gamma_du_once(double gamma_du, std::ostream &os = std::cerr)
{
    if (gamma_du == 0.0)
        return;
    static std::once_flag flag;
    std::call_once(flag, [&os] {
        os << "warning: gamma_du is ideally cancelled at the RU and does not affect any rate\n";
    });
}

/// Operating transmit powers of the uplink MS and the downlink RU.
struct PowerAllocation {
    double p_u = 0.0;
    double p_d = 0.0;

    bool operator==(const PowerAllocation &) const = default;

    static PowerAllocation full(const SystemParams &params) { return {params.p_u_max, params.p_d_max}; }

    void validate(const SystemParams &params) const
    {
        if (!(p_u >= 0.0 && p_u <= params.p_u_max && p_d >= 0.0 && p_d <= params.p_d_max))
            throw std::invalid_argument("PowerAllocation outside [0, P_u] x [0, P_d]");
    }
};

enum class SchemeId { HdScp, HdCran, FdScp, FdScpSic, FdCran, FdCranSic };

inline constexpr std::array<SchemeId, 6> kAllSchemes{SchemeId::HdScp,    SchemeId::HdCran, SchemeId::FdScp,
                                                     SchemeId::FdScpSic, SchemeId::FdCran, SchemeId::FdCranSic};

inline std::string_view to_string(SchemeId id)
{
    switch (id) {
    case SchemeId::HdScp: return "HdScp";
    case SchemeId::HdCran: return "HdCran";
    case SchemeId::FdScp: return "FdScp";
    case SchemeId::FdScpSic: return "FdScpSic";
    case SchemeId::FdCran: return "FdCran";
    case SchemeId::FdCranSic: return "FdCranSic";
    }
    return "?";
}

inline std::optional<SchemeId> parse_scheme(std::string_view name)
{
    for (SchemeId id : kAllSchemes)
        if (to_string(id) == name)
            return id;
    return std::nullopt;
}

inline bool is_full_duplex(SchemeId id) { return id != SchemeId::HdScp && id != SchemeId::HdCran; }
inline bool is_cran(SchemeId id)
{
    return id == SchemeId::HdCran || id == SchemeId::FdCran || id == SchemeId::FdCranSic;
}
inline bool uses_sic(SchemeId id) { return id == SchemeId::FdScpSic || id == SchemeId::FdCranSic; }

/// Per-cell rates of one scheme. Diagnostics hold whichever of sigma_u_sq,
/// sigma_d_sq, p_s, f_star, p_u_star, p_d_star apply to the scheme.
struct RateResult {
    double r_u = 0.0;
    double r_d = 0.0;
    double r_eq = 0.0;
    std::map<std::string, double> diagnostics;

    std::optional<double> diagnostic(const std::string &name) const
    {
        auto it = diagnostics.find(name);
        if (it == diagnostics.end())
            return std::nullopt;
        return it->second;
    }

    bool operator==(const RateResult &) const = default;
};

} // namespace fdcran
