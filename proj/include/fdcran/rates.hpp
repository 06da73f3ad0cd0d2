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
#include "power_search.hpp"
#include "spectral.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace fdcran {

/// Downlink receiver at the MS: treat the co-located uplink MS as noise, or
/// decode and cancel it first.
enum class SicMode { TreatAsNoise, Sic };

/// Numerical settings shared by every calculator.
struct SolverOptions {
    int panels = kDefaultPanels;
    PowerSearchOptions search;
};

/// Best equal rate under time sharing: max over f of min{f R_u, (1-f) R_d}.
inline double time_shared_equal_rate(double r_u, double r_d)
{
    return r_u + r_d > 0.0 ? r_d * r_u / (r_d + r_u) : 0.0;
}

namespace detail {

inline double pow2m1(double c) { return std::expm1(c * std::numbers::ln2); }

// The half-duplex calculators call the helpers below with the opposite
// direction's power set to zero, so the full-duplex formulas reduce to them
// bit-for-bit when the cross-link gains vanish.

inline double scp_uplink(const SystemParams &sp, double p_u, double p_d)
{
    const double a2 = sp.alpha * sp.alpha;
    const double sinr = p_u / (1.0 + 2.0 * a2 * p_u + 2.0 * sp.beta_du * sp.beta_du * p_d);
    return std::min(shannon_c(sinr), sp.c_u);
}

inline double scp_downlink(const SystemParams &sp, double p_u, double p_d, SicMode sic, double r_u)
{
    const double a2 = sp.alpha * sp.alpha;
    const double b2 = sp.beta_ud * sp.beta_ud;
    const double g2 = sp.gamma_ud * sp.gamma_ud;
    const double t3 = shannon_c(p_d / (1.0 + 2.0 * a2 * p_d + (2.0 * b2 + g2) * p_u));
    if (sic == SicMode::TreatAsNoise)
        return std::min(t3, sp.c_d);
    const double noise = 1.0 + 2.0 * a2 * p_d + 2.0 * b2 * p_u;
    const double t1 = shannon_c(p_d / noise);
    const double t2 = shannon_c((p_d + g2 * p_u) / noise);
    return std::min(q_clamp(t1, t2 - r_u, t3), sp.c_d);
}

/// Upper bound on min(r_u, scp_downlink(..., r_u)) that does not need r_u.
/// Under SIC, min(x, max(t2 - x, t3)) <= max(t2 / 2, t3) for every x.
inline double scp_downlink_bound(const SystemParams &sp, double p_u, double p_d, SicMode sic)
{
    if (sic == SicMode::TreatAsNoise)
        return scp_downlink(sp, p_u, p_d, sic, 0.0);
    const double a2 = sp.alpha * sp.alpha;
    const double b2 = sp.beta_ud * sp.beta_ud;
    const double g2 = sp.gamma_ud * sp.gamma_ud;
    const double noise = 1.0 + 2.0 * a2 * p_d + 2.0 * b2 * p_u;
    const double t1 = shannon_c(p_d / noise);
    const double t2 = shannon_c((p_d + g2 * p_u) / noise);
    const double t3 = shannon_c(p_d / (noise + g2 * p_u));
    return std::min({t1, std::max(0.5 * t2, t3), sp.c_d});
}

struct CranUplink {
    double rate = 0.0;
    std::optional<double> sigma_u_sq; ///< undefined when the fronthaul carries nothing
};

/// Compress-and-forward uplink with joint decoding. `du_power` is the D-U
/// interference power seen by the quantizer; it is cancelled at the CU.
inline CranUplink cran_uplink(const UplinkSpectrum &spectrum, double c_u, double p_u, double du_power)
{
    if (c_u <= 0.0)
        return {};
    const double a2 = spectrum.alpha() * spectrum.alpha();
    const double sigma = (1.0 + (1.0 + 2.0 * a2) * p_u + du_power) / pow2m1(c_u);
    return {spectrum.mean_capacity(p_u / (1.0 + sigma)), sigma};
}

struct CranDownlinkTerms {
    double signal = 0.0;      ///< p_s * h~_0^2
    double base_noise = 0.0;  ///< 1 + multi-cell leakage
    double p_s = 0.0;
    double sigma_d_sq = 0.0;
};

inline CranDownlinkTerms cran_downlink_terms(const SystemParams &sp, const EffectiveChannel &eff, double p_d)
{
    CranDownlinkTerms t;
    t.sigma_d_sq = p_d * std::exp2(-sp.c_d);
    t.p_s = -p_d * std::expm1(-sp.c_d * std::numbers::ln2);
    t.signal = t.p_s * eff.gain;
    t.base_noise = 1.0 + 2.0 * t.p_s * eff.leakage;
    return t;
}

inline double cran_quantization_noise(const SystemParams &sp, const CranDownlinkTerms &t)
{
    return t.sigma_d_sq * (1.0 + 2.0 * sp.alpha * sp.alpha);
}

/// Rate under treat-as-noise (t3), or under SIC (q(t1, t2 - r_u, t3)).
inline double cran_downlink(const SystemParams &sp, const CranDownlinkTerms &t, double p_u, SicMode sic, double r_u)
{
    const double b2 = sp.beta_ud * sp.beta_ud;
    const double g2 = sp.gamma_ud * sp.gamma_ud;
    const double quant = cran_quantization_noise(sp, t);
    const double t3 = shannon_c(t.signal / (t.base_noise + (2.0 * b2 + g2) * p_u + quant));
    if (sic == SicMode::TreatAsNoise)
        return t3;
    const double noise = t.base_noise + 2.0 * b2 * p_u + quant;
    const double t1 = shannon_c(t.signal / noise);
    const double t2 = shannon_c((t.signal + g2 * p_u) / noise);
    return q_clamp(t1, t2 - r_u, t3);
}

/// Upper bound on min(r_u, cran_downlink(..., r_u)) that does not need r_u.
inline double cran_downlink_bound(const SystemParams &sp, const CranDownlinkTerms &t, double p_u, SicMode sic)
{
    if (sic == SicMode::TreatAsNoise)
        return cran_downlink(sp, t, p_u, sic, 0.0);
    const double b2 = sp.beta_ud * sp.beta_ud;
    const double g2 = sp.gamma_ud * sp.gamma_ud;
    const double noise = t.base_noise + 2.0 * b2 * p_u + cran_quantization_noise(sp, t);
    const double t1 = shannon_c(t.signal / noise);
    const double t2 = shannon_c((t.signal + g2 * p_u) / noise);
    const double t3 = shannon_c(t.signal / (noise + g2 * p_u));
    return std::min(t1, std::max(0.5 * t2, t3));
}

} // namespace detail

// ---------------------------------------------------------------------------
// Half duplex

/// Single-cell processing, interference treated as noise, full power,
/// optimal uplink/downlink time split.
inline RateResult hd_scp(const SystemParams &params)
{
    params.validate();
    RateResult r;
    r.r_u = detail::scp_uplink(params, params.p_u_max, 0.0);
    r.r_d = detail::scp_downlink(params, 0.0, params.p_d_max, SicMode::TreatAsNoise, 0.0);
    r.r_eq = time_shared_equal_rate(r.r_u, r.r_d);
    if (r.r_u + r.r_d > 0.0)
        r.diagnostics["f_star"] = r.r_d / (r.r_u + r.r_d);
    return r;
}

struct UplinkRate {
    double rate = 0.0;
    std::optional<double> sigma_u_sq;
};

inline UplinkRate hd_cran_uplink(const SystemParams &params, int panels = kDefaultPanels)
{
    params.validate();
    const auto up = detail::cran_uplink(UplinkSpectrum(params.alpha, panels), params.c_u, params.p_u_max, 0.0);
    return {up.rate, up.sigma_u_sq};
}

struct DownlinkRate {
    double rate = 0.0;
    double sigma_d_sq = 0.0;
    double p_s = 0.0;
};

inline DownlinkRate hd_cran_downlink(const SystemParams &params, const Precoder &precoder)
{
    params.validate();
    const auto terms = detail::cran_downlink_terms(params, effective_channel(precoder, params.alpha), params.p_d_max);
    return {detail::cran_downlink(params, terms, 0.0, SicMode::TreatAsNoise, 0.0), terms.sigma_d_sq, terms.p_s};
}

inline RateResult hd_cran(const SystemParams &params, const Precoder &precoder)
{
    const auto up = hd_cran_uplink(params, precoder.panels());
    const auto down = hd_cran_downlink(params, precoder);
    RateResult r;
    r.r_u = up.rate;
    r.r_d = down.rate;
    r.r_eq = time_shared_equal_rate(r.r_u, r.r_d);
    if (up.sigma_u_sq)
        r.diagnostics["sigma_u_sq"] = *up.sigma_u_sq;
    r.diagnostics["sigma_d_sq"] = down.sigma_d_sq;
    r.diagnostics["p_s"] = down.p_s;
    if (r.r_u + r.r_d > 0.0)
        r.diagnostics["f_star"] = r.r_d / (r.r_u + r.r_d);
    return r;
}

// ---------------------------------------------------------------------------
// Full duplex, single-cell processing

/// Rates at fixed operating powers; r_eq is min{R_u, R_d}.
inline RateResult fd_scp_at(const SystemParams &params, const PowerAllocation &powers, SicMode sic)
{
    RateResult r;
    r.r_u = detail::scp_uplink(params, powers.p_u, powers.p_d);
    r.r_d = detail::scp_downlink(params, powers.p_u, powers.p_d, sic, r.r_u);
    r.r_eq = std::min(r.r_u, r.r_d);
    return r;
}

inline RateResult fd_scp(const SystemParams &params, SicMode sic, const PowerSearchOptions &search = {})
{
    params.validate();
    // R_u grows with p_u and t1 shrinks with it, so a row is bounded by R_u at
    // p_u_max and t1 at p_u = 0 (where t1 equals the treat-as-noise rate).
    const auto best = maximize_over_powers(
        params.p_u_max, params.p_d_max, [&](const PowerAllocation &p) { return fd_scp_at(params, p, sic).r_eq; },
        [&](const PowerAllocation &p) { return detail::scp_downlink_bound(params, p.p_u, p.p_d, sic); },
        [&](double p_d) {
            return std::min(detail::scp_uplink(params, params.p_u_max, p_d),
                            detail::scp_downlink_bound(params, 0.0, p_d, SicMode::TreatAsNoise));
        },
        search);
    RateResult r = fd_scp_at(params, best.argmax, sic);
    r.diagnostics["p_u_star"] = best.argmax.p_u;
    r.diagnostics["p_d_star"] = best.argmax.p_d;
    return r;
}

// ---------------------------------------------------------------------------
// Full duplex, C-RAN

/// Precomputed per-configuration quantities of the full-duplex C-RAN: the
/// uplink spectrum, the effective downlink channel and R_g(2).
class CranModel {
public:
    CranModel(const SystemParams &params, const Precoder &precoder)
        : params_(params),
          spectrum_(params.alpha, precoder.panels()),
          effective_(effective_channel(precoder, params.alpha)),
          rg2_(rg(precoder, 2))
    {
        params_.validate();
    }

    const SystemParams &params() const { return params_; }
    double rg2() const { return rg2_; }
    const EffectiveChannel &effective() const { return effective_; }

    /// Power of beta_du (x_{k-1} + x_{k+1}) entering the RU quantizer.
    double du_interference(double p_d) const
    {
        return 2.0 * params_.beta_du * params_.beta_du * (1.0 + rg2_) * p_d;
    }

    UplinkRate uplink(const PowerAllocation &p) const
    {
        const auto up = detail::cran_uplink(spectrum_, params_.c_u, p.p_u, du_interference(p.p_d));
        return {up.rate, up.sigma_u_sq};
    }

    double downlink(const PowerAllocation &p, SicMode sic, double r_u) const
    {
        return detail::cran_downlink(params_, detail::cran_downlink_terms(params_, effective_, p.p_d), p.p_u, sic, r_u);
    }

    double downlink_bound(const PowerAllocation &p, SicMode sic) const
    {
        return detail::cran_downlink_bound(params_, detail::cran_downlink_terms(params_, effective_, p.p_d), p.p_u,
                                           sic);
    }

    RateResult evaluate(const PowerAllocation &p, SicMode sic) const
    {
        const auto up = uplink(p);
        const auto terms = detail::cran_downlink_terms(params_, effective_, p.p_d);
        RateResult r;
        r.r_u = up.rate;
        r.r_d = detail::cran_downlink(params_, terms, p.p_u, sic, up.rate);
        r.r_eq = std::min(r.r_u, r.r_d);
        if (up.sigma_u_sq)
            r.diagnostics["sigma_u_sq"] = *up.sigma_u_sq;
        r.diagnostics["sigma_d_sq"] = terms.sigma_d_sq;
        r.diagnostics["p_s"] = terms.p_s;
        return r;
    }

private:
    SystemParams params_;
    UplinkSpectrum spectrum_;
    EffectiveChannel effective_;
    double rg2_;
};

inline UplinkRate fd_cran_uplink(const SystemParams &params, const PowerAllocation &powers, const Precoder &precoder)
{
    return CranModel(params, precoder).uplink(powers);
}

/// `r_u` is only read under SIC, where the MS must decode the uplink message.
inline double fd_cran_downlink(const SystemParams &params, const PowerAllocation &powers, const Precoder &precoder,
                               SicMode sic, double r_u = 0.0)
{
    return CranModel(params, precoder).downlink(powers, sic, r_u);
}

inline RateResult fd_cran_at(const SystemParams &params, const PowerAllocation &powers, const Precoder &precoder,
                             SicMode sic)
{
    return CranModel(params, precoder).evaluate(powers, sic);
}

inline RateResult fd_cran(const SystemParams &params, const Precoder &precoder, SicMode sic,
                          const PowerSearchOptions &search = {})
{
    const CranModel model(params, precoder);
    const auto best = maximize_over_powers(
        params.p_u_max, params.p_d_max,
        [&](const PowerAllocation &p) {
            const double r_u = model.uplink(p).rate;
            return std::min(r_u, model.downlink(p, sic, r_u));
        },
        [&](const PowerAllocation &p) { return model.downlink_bound(p, sic); },
        [&](double p_d) {
            return std::min(model.uplink({params.p_u_max, p_d}).rate,
                            model.downlink_bound({0.0, p_d}, SicMode::TreatAsNoise));
        },
        search);
    RateResult r = model.evaluate(best.argmax, sic);
    r.diagnostics["p_u_star"] = best.argmax.p_u;
    r.diagnostics["p_d_star"] = best.argmax.p_d;
    return r;
}

// ---------------------------------------------------------------------------

/// Dispatches to the calculator of `scheme`; C-RAN schemes use a ZF precoder
/// matched to params.alpha. `full_power` only affects the C-RAN schemes.
inline RateResult compute_scheme(SchemeId scheme, const SystemParams &params, const SolverOptions &opt = {})
{
    PowerSearchOptions scp_search = opt.search;
    scp_search.full_power = false;
    switch (scheme) {
    case SchemeId::HdScp: return hd_scp(params);
    case SchemeId::HdCran: return hd_cran(params, zf_precoder(params.alpha, opt.panels));
    case SchemeId::FdScp: return fd_scp(params, SicMode::TreatAsNoise, scp_search);
    case SchemeId::FdScpSic: return fd_scp(params, SicMode::Sic, scp_search);
    case SchemeId::FdCran:
        return fd_cran(params, zf_precoder(params.alpha, opt.panels), SicMode::TreatAsNoise, opt.search);
    case SchemeId::FdCranSic:
        return fd_cran(params, zf_precoder(params.alpha, opt.panels), SicMode::Sic, opt.search);
    }
    throw std::invalid_argument("unknown scheme");
}

} // namespace fdcran
