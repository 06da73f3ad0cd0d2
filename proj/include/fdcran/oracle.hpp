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

// Brute-force cross-checks. Nothing here shares a code path with the
// frequency-domain rate formulas: channels are explicit finite circulant
// matrices, precoders are explicit time-domain taps, and optimizers are
// single dense grids.

#pragma once

#include "core.hpp"
#include "rates.hpp"
#include "spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fdcran::oracle {

inline constexpr int kDefaultCells = 512;
inline constexpr int kDefaultResolution = 512;

/// Periodic N-cell Wyner channel: row k is row 0 rotated right by k.
struct CirculantChannel {
    int n = 0;
    std::vector<double> first_row;

    static CirculantChannel wyner(double alpha, int n)
    {
        if (n < 8)
            throw std::invalid_argument("circulant channel needs n >= 8");
        CirculantChannel ch{n, std::vector<double>(n, 0.0)};
        ch.first_row[0] = 1.0;
        ch.first_row[1] = alpha;
        ch.first_row[n - 1] = alpha;
        return ch;
    }

    Eigen::MatrixXd dense() const
    {
        Eigen::MatrixXd m(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c)
                m(r, c) = first_row[((c - r) % n + n) % n];
        return m;
    }

    /// Eigenvalues of a symmetric circulant, by direct DFT of the first row.
    std::vector<double> eigenvalues() const
    {
        std::vector<double> lambda(n, 0.0);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                lambda[j] += first_row[k] * std::cos(2.0 * std::numbers::pi * ((static_cast<long>(j) * k) % n) / n);
        return lambda;
    }
};

/// (1/N) log2 det(I + snr H H^T) for the N-cell circulant channel, with
/// snr = p_u / (1 + sigma_u_sq), computed from the circulant eigenvalues.
inline double circulant_uplink_rate(double alpha, double p_u, double sigma_u_sq, int n = kDefaultCells)
{
    const auto ch = CirculantChannel::wyner(alpha, n);
    const double snr = p_u / (1.0 + sigma_u_sq);
    double acc = 0.0;
    for (double lambda : ch.eigenvalues())
        acc += std::log2(1.0 + snr * lambda * lambda);
    return acc / n;
}

/// Same quantity through an explicit Cholesky log-determinant.
inline double circulant_uplink_rate_dense(double alpha, double p_u, double sigma_u_sq, int n)
{
    const Eigen::MatrixXd h = CirculantChannel::wyner(alpha, n).dense();
    const double snr = p_u / (1.0 + sigma_u_sq);
    const Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n) + snr * h * h.transpose();
    const Eigen::LLT<Eigen::MatrixXd> llt(m);
    if (llt.info() != Eigen::Success)
        throw NumericDomainError("uplink covariance is not positive definite");
    const Eigen::VectorXd diag = llt.matrixL().toDenseMatrix().diagonal();
    return 2.0 * diag.array().log().sum() / std::numbers::ln2 / n;
}

/// Time-domain taps g_k, k = 0..N-1 (circular, N = panels), by inverse DFT of
/// the sampled frequency response.
inline std::vector<double> precoder_taps(const Precoder &precoder)
{
    const int n = precoder.panels();
    const auto g = precoder.samples();
    std::vector<double> taps(n, 0.0);
    for (int k = 0; k < n; ++k) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += g[i] * std::cos(2.0 * std::numbers::pi * ((static_cast<long>(i) * k) % n) / n);
        taps[k] = acc / n;
    }
    return taps;
}

/// sum_k g_k g_{k - tau} over circular taps.
inline double tap_autocorrelation(const std::vector<double> &taps, int tau)
{
    const int n = static_cast<int>(taps.size());
    double acc = 0.0;
    for (int k = 0; k < n; ++k)
        acc += taps[k] * taps[((k - tau) % n + n) % n];
    return acc;
}

struct FdUplinkCheck {
    double rate = 0.0;
    double sigma_u_sq = 0.0;
    double du_power = 0.0; ///< D-U interference power at one RU
};

/// Full-duplex C-RAN uplink on an explicit N-cell system: builds the received
/// covariance I + p_u H H^T + B C_x B^T with C_x the covariance of the
/// precoded downlink signals, quantizes at the fronthaul rate, cancels the
/// known downlink contribution, and evaluates the joint-decoding log-det.
inline FdUplinkCheck fd_cran_uplink_check(const SystemParams &params, const PowerAllocation &powers,
                                          const Precoder &precoder, int n = kDefaultCells)
{
    if (params.c_u <= 0.0)
        return {};
    const auto taps = precoder_taps(precoder);
    // fold the long filter onto n cells
    std::vector<double> wrapped(n, 0.0);
    for (std::size_t k = 0; k < taps.size(); ++k) {
        const long signed_k = k <= taps.size() / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(taps.size());
        wrapped[((signed_k % n) + n) % n] += taps[k];
    }
    CirculantChannel filter{n, std::vector<double>(n, 0.0)};
    for (int c = 0; c < n; ++c)
        filter.first_row[c] = wrapped[(n - c) % n];
    const Eigen::MatrixXd g = filter.dense();
    const Eigen::MatrixXd cov_x = powers.p_d * g * g.transpose();

    CirculantChannel nb = CirculantChannel{n, std::vector<double>(n, 0.0)};
    nb.first_row[1] = params.beta_du;
    nb.first_row[n - 1] = params.beta_du;
    const Eigen::MatrixXd b = nb.dense();
    const Eigen::MatrixXd h = CirculantChannel::wyner(params.alpha, n).dense();

    const Eigen::MatrixXd du = b * cov_x * b.transpose();
    const Eigen::MatrixXd cov_y = Eigen::MatrixXd::Identity(n, n) + powers.p_u * h * h.transpose() + du;

    FdUplinkCheck out;
    out.du_power = du(0, 0);
    out.sigma_u_sq = cov_y(0, 0) / (std::exp2(params.c_u) - 1.0);
    out.rate = circulant_uplink_rate(params.alpha, powers.p_u, out.sigma_u_sq, n);
    return out;
}

struct ExhaustiveResult {
    double r_eq = 0.0;
    double p_u_star = 0.0;
    double p_d_star = 0.0;
};

/// Single dense resolution x resolution grid over [0, p_u_max] x [0, p_d_max];
/// ties within `tie_tolerance` of the maximum go to the lexicographically
/// smallest (p_u, p_d).
template <class Objective>
ExhaustiveResult exhaustive_grid(double p_u_max, double p_d_max, Objective &&objective,
                                 int resolution = kDefaultResolution, double tie_tolerance = 1e-9)
{
    if (resolution < 64)
        throw std::invalid_argument("exhaustive grid resolution must be >= 64");
    const int m = resolution;
    std::vector<double> value(static_cast<std::size_t>(m) * m);
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const double v = objective(PowerAllocation{p_u_max * i / (m - 1), p_d_max * j / (m - 1)});
            value[static_cast<std::size_t>(i) * m + j] = v;
            best = std::max(best, v);
        }
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            if (value[static_cast<std::size_t>(i) * m + j] >= best - tie_tolerance)
                return {best, p_u_max * i / (m - 1), p_d_max * j / (m - 1)};
    return {best, 0.0, 0.0};
}

inline ExhaustiveResult exhaustive_power_opt(const SystemParams &params, SicMode sic,
                                             int resolution = kDefaultResolution)
{
    return exhaustive_grid(
        params.p_u_max, params.p_d_max, [&](const PowerAllocation &p) { return fd_scp_at(params, p, sic).r_eq; },
        resolution);
}

inline ExhaustiveResult exhaustive_power_opt(const SystemParams &params, const Precoder &precoder, SicMode sic,
                                             int resolution = kDefaultResolution)
{
    const CranModel model(params, precoder);
    return exhaustive_grid(
        params.p_u_max, params.p_d_max, [&](const PowerAllocation &p) { return model.evaluate(p, sic).r_eq; },
        resolution);
}

/// max over f in [0, 1] of min{f r_u, (1 - f) r_d}: a uniform grid of the
/// given step followed by golden-section search on the bracketing cell.
inline double numeric_time_share(double r_u, double r_d, double step = 1e-4)
{
    auto objective = [&](double f) { return std::min(f * r_u, (1.0 - f) * r_d); };
    const int cells = static_cast<int>(std::lround(1.0 / step));
    int best_i = 0;
    for (int i = 1; i <= cells; ++i)
        if (objective(static_cast<double>(i) / cells) > objective(static_cast<double>(best_i) / cells))
            best_i = i;
    double lo = std::max(0.0, (best_i - 1.0) / cells);
    double hi = std::min(1.0, (best_i + 1.0) / cells);
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double a = hi - inv_phi * (hi - lo);
        const double b = lo + inv_phi * (hi - lo);
        if (objective(a) < objective(b))
            lo = a;
        else
            hi = b;
    }
    return std::max(objective(0.5 * (lo + hi)), objective(static_cast<double>(best_i) / cells));
}

} // namespace fdcran::oracle
