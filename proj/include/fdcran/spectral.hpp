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

#include <cmath>
#include <numbers>
#include <span>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fdcran {

/// Default number of Simpson panels on the unit frequency interval.
inline constexpr int kDefaultPanels = 4096;

/// Number of effective-channel taps summed for the leakage of a custom precoder.
inline constexpr int kLeakageTaps = 8;

/// Fourier transform of the Wyner channel taps {alpha, 1, alpha}.
inline double channel_response(double alpha, double f)
{
    return 1.0 + 2.0 * alpha * std::cos(2.0 * std::numbers::pi * f);
}

namespace detail {

inline void check_panels(int panels)
{
    if (panels < 2 || panels % 2 != 0)
        throw std::invalid_argument("panel count must be even and >= 2, got " + std::to_string(panels));
}

/// Composite Simpson weight of node i out of [0, panels] on an interval of width `width`.
inline double simpson_weight(int i, int panels, double width)
{
    const double h = width / panels;
    if (i == 0 || i == panels)
        return h / 3.0;
    return (i % 2 == 1 ? 4.0 : 2.0) * h / 3.0;
}

/// Simpson sum of sample(i) over nodes i = 0..panels spanning [0, width].
template <class Sample>
double simpson_sum(int panels, double width, Sample &&sample)
{
    double acc = 0.0;
    for (int i = 0; i <= panels; ++i) {
        const double v = sample(i);
        if (!std::isfinite(v)) {
            std::ostringstream msg;
            msg << "non-finite integrand at f = " << (width * i) / panels;
            throw NumericDomainError(msg.str());
        }
        acc += simpson_weight(i, panels, width) * v;
    }
    return acc;
}

} // namespace detail

/// Composite Simpson approximation of the integral of fn over [0, 1].
template <class Fn>
double integrate_unit(Fn &&fn, int panels = kDefaultPanels)
{
    detail::check_panels(panels);
    return detail::simpson_sum(panels, 1.0, [&](int i) { return fn(static_cast<double>(i) / panels); });
}

/// Same as integrate_unit for integrands with fn(f) == fn(1 - f), using only [0, 1/2].
template <class Fn>
double integrate_unit_even(Fn &&fn, int panels = kDefaultPanels)
{
    if (panels < 4 || panels % 4 != 0)
        throw std::invalid_argument("even-symmetric integration needs panels divisible by 4");
    const int half = panels / 2;
    return 2.0 * detail::simpson_sum(half, 0.5, [&](int i) { return fn(static_cast<double>(i) / panels); });
}

/// Zero-forcing requested for a channel whose response vanishes on [0, 1).
class ZfSingular : public NumericDomainError {
public:
    explicit ZfSingular(double alpha)
        : NumericDomainError("zero-forcing precoder is singular for alpha = " + std::to_string(alpha) +
                             " (requires alpha < 0.5)"),
          alpha_(alpha)
    {
    }
    double alpha() const { return alpha_; }

private:
    double alpha_;
};

/// Downlink linear precoder g, held as its real, even frequency response G(f)
/// sampled at f_i = i / panels for i = 0..panels.
///
/// Every instance has unit energy (integral of G^2 is 1) and G(f) = G(1 - f).
class Precoder {
public:
    enum class Kind { ZeroForcing, Custom };

    /// Builds G(f) = c / H(f) with c chosen for unit energy.
    static Precoder zero_forcing(double alpha, int panels = kDefaultPanels)
    {
        detail::check_panels(panels);
        if (!(alpha >= 0.0) || alpha >= 0.5 - 1e-9)
            throw ZfSingular(alpha);
        const double inv_energy =
            integrate_unit([alpha](double f) { return 1.0 / std::pow(channel_response(alpha, f), 2); }, panels);
        const double c = 1.0 / std::sqrt(inv_energy);
        std::vector<double> g(panels + 1);
        for (int i = 0; 2 * i <= panels; ++i)
            g[i] = g[panels - i] = c / channel_response(alpha, static_cast<double>(i) / panels);
        return Precoder(Kind::ZeroForcing, alpha, std::move(g));
    }

    /// Accepts an arbitrary sampled response on the uniform grid (size panels + 1).
    /// Symmetrizes by averaging G(f) with G(1 - f) and rescales to unit energy.
    static Precoder custom(std::span<const double> samples)
    {
        const int panels = static_cast<int>(samples.size()) - 1;
        detail::check_panels(panels);
        std::vector<double> g(samples.begin(), samples.end());
        for (int i = 0; i <= panels; ++i) {
            if (!std::isfinite(g[i]))
                throw std::invalid_argument("custom precoder sample " + std::to_string(i) + " is not finite");
            if (std::abs(g[i] - g[panels - i]) > 1e-6)
                throw std::invalid_argument("custom precoder response is not symmetric about f = 1/2");
        }
        for (int i = 0; i < panels - i; ++i) {
            const double avg = 0.5 * (g[i] + g[panels - i]);
            g[i] = g[panels - i] = avg;
        }
        const double energy = detail::simpson_sum(panels, 1.0, [&](int i) { return g[i] * g[i]; });
        if (!(energy > 0.0))
            throw std::invalid_argument("custom precoder has zero energy");
        const double scale = 1.0 / std::sqrt(energy);
        for (double &v : g)
            v *= scale;
        return Precoder(Kind::Custom, 0.0, std::move(g));
    }

    Kind kind() const { return kind_; }
    /// Channel coefficient the precoder inverts; meaningful for ZeroForcing only.
    double zf_alpha() const { return zf_alpha_; }
    int panels() const { return static_cast<int>(g_.size()) - 1; }
    std::span<const double> samples() const { return g_; }
    double frequency(int i) const { return static_cast<double>(i) / panels(); }

    /// Simpson quadrature of sample(i), i = 0..panels, over the precoder grid.
    template <class Sample>
    double integrate(Sample &&sample) const
    {
        return detail::simpson_sum(panels(), 1.0, std::forward<Sample>(sample));
    }

    double energy() const
    {
        return integrate([this](int i) { return g_[i] * g_[i]; });
    }

private:
    Precoder(Kind kind, double alpha, std::vector<double> g) : kind_(kind), zf_alpha_(alpha), g_(std::move(g)) {}

    Kind kind_;
    double zf_alpha_;
    std::vector<double> g_;
};

inline Precoder zf_precoder(double alpha, int panels = kDefaultPanels)
{
    return Precoder::zero_forcing(alpha, panels);
}

/// Autocorrelation R_g(tau) = sum_k g_k g_{k-tau}, evaluated in frequency.
inline double rg(const Precoder &precoder, int tau)
{
    const auto g = precoder.samples();
    return precoder.integrate([&](int i) {
        return g[i] * g[i] * std::cos(2.0 * std::numbers::pi * precoder.frequency(i) * tau);
    });
}

/// Tap k of the effective channel h * g.
inline double h_tilde(const Precoder &precoder, double alpha, int k)
{
    const auto g = precoder.samples();
    return precoder.integrate([&](int i) {
        const double f = precoder.frequency(i);
        return channel_response(alpha, f) * g[i] * std::cos(2.0 * std::numbers::pi * f * k);
    });
}

/// Useful downlink gain h~_0^2 and multi-cell leakage sum_{k>0} h~_k^2.
/// Leakage is exactly zero for a zero-forcing filter matched to alpha.
struct EffectiveChannel {
    double gain = 0.0;
    double leakage = 0.0;
};

inline EffectiveChannel effective_channel(const Precoder &precoder, double alpha)
{
    EffectiveChannel eff;
    const double h0 = h_tilde(precoder, alpha, 0);
    eff.gain = h0 * h0;
    if (precoder.kind() == Precoder::Kind::ZeroForcing && precoder.zf_alpha() == alpha)
        return eff;
    for (int k = 1; k <= kLeakageTaps; ++k) {
        const double hk = h_tilde(precoder, alpha, k);
        eff.leakage += hk * hk;
    }
    return eff;
}

/// Samples of H(f)^2 on [0, 1/2] with folded Simpson weights, for repeated
/// evaluation of the joint-decoding uplink rate at different SINR scales.
class UplinkSpectrum {
public:
    UplinkSpectrum(double alpha, int panels = kDefaultPanels) : alpha_(alpha), panels_(panels)
    {
        if (panels < 4 || panels % 4 != 0)
            throw std::invalid_argument("uplink spectrum needs panels divisible by 4");
        const int half = panels / 2;
        // grouped by Simpson weight: endpoints, odd nodes, interior even nodes
        for (int i = 0; i <= half; i += half)
            ends_.push_back(squared_response(i));
        for (int i = 1; i < half; i += 2)
            odd_.push_back(squared_response(i));
        for (int i = 2; i < half; i += 2)
            even_.push_back(squared_response(i));
        width_ = 0.5 / half;
        max_gain_ = (1.0 + 2.0 * alpha) * (1.0 + 2.0 * alpha);
    }

    double alpha() const { return alpha_; }
    int panels() const { return panels_; }

    /// Integral over [0, 1) of C(snr * H(f)^2).
    double mean_capacity(double snr) const
    {
        if (!std::isfinite(snr) || snr < 0.0)
            throw NumericDomainError("uplink SNR must be finite and non-negative");
        // Each weight class is reduced to one log2 of a running product; the
        // product is renormalized often enough that it cannot overflow.
        const double top = std::log2(1.0 + snr * max_gain_);
        const int chunk = top > 0.0 ? static_cast<int>(std::clamp(900.0 / top, 1.0, 64.0)) : 64;
        auto log2_product = [&](const std::vector<double> &gains) {
            double mant = 1.0;
            long exponent = 0;
            int pending = 0;
            for (double g : gains) {
                mant *= 1.0 + snr * g;
                if (++pending == chunk) {
                    int e = 0;
                    mant = std::frexp(mant, &e);
                    exponent += e;
                    pending = 0;
                }
            }
            return std::log2(mant) + static_cast<double>(exponent);
        };
        // folded to [0, 1/2]: every weight doubles
        return 2.0 * width_ / 3.0 * (log2_product(ends_) + 4.0 * log2_product(odd_) + 2.0 * log2_product(even_));
    }

private:
    double squared_response(int i) const
    {
        const double h = channel_response(alpha_, static_cast<double>(i) / panels_);
        return h * h;
    }

    double alpha_;
    int panels_;
    double width_ = 0.0;
    double max_gain_ = 0.0;
    std::vector<double> ends_, odd_, even_;
};

} // namespace fdcran
