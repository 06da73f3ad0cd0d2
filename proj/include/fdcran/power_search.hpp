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

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace fdcran {

struct PowerSearchOptions {
    int grid = 64;            ///< points per axis in every pass
    int refine_passes = 2;    ///< zoomed passes after the coarse grid
    double zoom = 8.0;        ///< window shrink factor per refinement pass
    int polish_iterations = 32; ///< golden-section steps per kink polish (0 disables)
    double tie_tolerance = 1e-9;
    bool full_power = false;  ///< skip the search and operate at the budgets

    void validate() const
    {
        if (grid < 2)
            throw std::invalid_argument("power grid needs at least 2 points per axis");
        if (refine_passes < 0 || polish_iterations < 0 || !(zoom > 1.0) || !(tie_tolerance >= 0.0))
            throw std::invalid_argument("invalid power refinement settings");
    }
};

struct PowerSearchResult {
    double value = 0.0;
    PowerAllocation argmax;
    std::size_t evaluations = 0;
};

namespace detail {

inline std::vector<double> window_points(double lo, double hi, int n)
{
    std::vector<double> pts(n);
    for (int j = 0; j < n; ++j)
        pts[j] = lo + (hi - lo) * j / (n - 1);
    pts.back() = hi;
    return pts;
}

/// Window of width budget / zoom^pass around `center`, shifted to stay inside [0, budget].
inline std::pair<double, double> zoom_window(double center, double budget, double zoom, int pass)
{
    const double width = budget / std::pow(zoom, pass);
    const double lo = std::clamp(center - 0.5 * width, 0.0, budget - width);
    return {lo, std::min(lo + width, budget)};
}

/// Golden-section maximization of a unimodal f on [lo, hi]; returns the best
/// (x, f(x)) among all evaluated points.
template <class F>
std::pair<double, double> golden_max(double lo, double hi, int iterations, F &&f)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - inv_phi * (hi - lo), b = lo + inv_phi * (hi - lo);
    double fa = f(a), fb = f(b);
    std::pair<double, double> best = fa >= fb ? std::pair{a, fa} : std::pair{b, fb};
    for (int it = 0; it < iterations; ++it) {
        if (fa < fb) {
            lo = a;
            a = b;
            fa = fb;
            b = lo + inv_phi * (hi - lo);
            fb = f(b);
            if (fb > best.second)
                best = {b, fb};
        } else {
            hi = b;
            b = a;
            fb = fa;
            a = hi - inv_phi * (hi - lo);
            fa = f(a);
            if (fa > best.second)
                best = {a, fa};
        }
    }
    return best;
}

inline bool lex_less(const PowerAllocation &a, const PowerAllocation &b)
{
    return a.p_u < b.p_u || (a.p_u == b.p_u && a.p_d < b.p_d);
}

} // namespace detail

/// Maximizes objective(p) over [0, p_u_max] x [0, p_d_max].
///
/// Nested grid search: a uniform grid of p_d rows, and inside every row a
/// uniform grid over p_u. Both levels then run `refine_passes` zoomed grids
/// (width / zoom^pass) centred on their incumbent, so the first level of the
/// search is the grid x grid uniform grid. Each row's incumbent, and finally
/// the overall incumbent, is polished by golden-section search within one
/// final grid step. Among points within tie_tolerance of the best value the
/// lexicographically smallest (p_u, p_d) wins.
///
/// `upper_bound(p)` must never be below objective(p), and `row_bound(p_d)`
/// must never be below objective(p_u, p_d) for any p_u. Points and rows that
/// cannot reach the running best are skipped, which leaves the result
/// unchanged.
template <class Objective, class UpperBound, class RowBound>
    requires std::invocable<UpperBound &, const PowerAllocation &> && std::invocable<RowBound &, double>
PowerSearchResult maximize_over_powers(double p_u_max, double p_d_max, Objective &&objective,
                                       UpperBound &&upper_bound, RowBound &&row_bound,
                                       const PowerSearchOptions &opt = {})
{
    opt.validate();
    PowerSearchResult out;
    if (opt.full_power) {
        out.argmax = {p_u_max, p_d_max};
        out.value = objective(out.argmax);
        out.evaluations = 1;
        return out;
    }

    struct Sample {
        PowerAllocation p;
        double v;
    };
    std::vector<Sample> seen;
    double best = -std::numeric_limits<double>::infinity();

    // lexicographically smallest sample within tolerance of `level`, from index `first` on
    auto pick = [&](std::size_t first, double level) {
        const Sample *chosen = nullptr;
        for (std::size_t i = first; i < seen.size(); ++i)
            if (seen[i].v >= level - opt.tie_tolerance && (!chosen || detail::lex_less(seen[i].p, chosen->p)))
                chosen = &seen[i];
        return chosen;
    };

    auto search_row = [&](double p_d) {
        const std::size_t first = seen.size();
        double row_best = -std::numeric_limits<double>::infinity();
        double centre = 0.0;
        for (int pass = 0; pass <= opt.refine_passes; ++pass) {
            const auto [lo, hi] =
                pass == 0 ? std::pair{0.0, p_u_max} : detail::zoom_window(centre, p_u_max, opt.zoom, pass);
            const auto us = detail::window_points(lo, hi, opt.grid);
            std::vector<double> bound(us.size());
            for (std::size_t i = 0; i < us.size(); ++i)
                bound[i] = upper_bound(PowerAllocation{us[i], p_d});
            std::vector<std::size_t> order(us.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return bound[a] > bound[b]; });
            for (std::size_t idx : order) {
                if (bound[idx] < row_best - opt.tie_tolerance)
                    break;
                const PowerAllocation p{us[idx], p_d};
                seen.push_back({p, objective(p)});
                ++out.evaluations;
                row_best = std::max(row_best, seen.back().v);
            }
            const Sample *inc = pick(first, row_best);
            if (!inc)
                break;
            centre = inc->p.p_u;
        }
        // golden-section polish of the row's kink; a polished point joins the
        // candidates only if it beats the grid by more than the tie tolerance
        if (opt.polish_iterations > 0 && row_best > -std::numeric_limits<double>::infinity()) {
            const double h = p_u_max / ((opt.grid - 1) * std::pow(opt.zoom, opt.refine_passes));
            const auto [u, v] = detail::golden_max(std::max(0.0, centre - h), std::min(p_u_max, centre + h),
                                                   opt.polish_iterations, [&](double p_u) {
                                                       ++out.evaluations;
                                                       return objective(PowerAllocation{p_u, p_d});
                                                   });
            if (v > row_best + opt.tie_tolerance) {
                seen.push_back({{u, p_d}, v});
                row_best = v;
            }
        }
        best = std::max(best, row_best);
    };

    std::vector<double> searched_rows;
    for (int pass = 0; pass <= opt.refine_passes; ++pass) {
        double lo = 0.0, hi = p_d_max;
        if (pass > 0) {
            const Sample *inc = pick(0, best);
            if (!inc)
                break;
            std::tie(lo, hi) = detail::zoom_window(inc->p.p_d, p_d_max, opt.zoom, pass);
        }
        std::vector<std::pair<double, double>> rows; // (p_d, row bound)
        for (double d : detail::window_points(lo, hi, opt.grid))
            if (std::find(searched_rows.begin(), searched_rows.end(), d) == searched_rows.end())
                rows.emplace_back(d, row_bound(d));
        std::stable_sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) { return a.second > b.second; });
        for (const auto &[d, rb] : rows) {
            searched_rows.push_back(d);
            if (rb < best - opt.tie_tolerance)
                continue;
            search_row(d);
        }
    }

    const Sample *winner = pick(0, best);
    out.argmax = winner->p;
    out.value = winner->v;

    // The max-min objective has a kink where the two rates cross, which a grid
    // only resolves to its spacing. Nested golden-section search within one
    // final grid step of the incumbent; kept only on a strict improvement.
    if (opt.polish_iterations > 0) {
        const double shrink = (opt.grid - 1) * std::pow(opt.zoom, opt.refine_passes);
        const double hu = p_u_max / shrink, hd = p_d_max / shrink;
        const PowerAllocation centre = out.argmax;
        PowerAllocation polished = centre;
        double polished_value = out.value;
        auto evaluate = [&](const PowerAllocation &p) {
            const double v = objective(p);
            ++out.evaluations;
            if (v > polished_value) {
                polished_value = v;
                polished = p;
            }
            return v;
        };
        auto row = [&](double p_d) {
            return detail::golden_max(std::max(0.0, centre.p_u - hu), std::min(p_u_max, centre.p_u + hu),
                                      opt.polish_iterations,
                                      [&](double p_u) { return evaluate({p_u, p_d}); })
                .second;
        };
        if (hd > 0.0)
            detail::golden_max(std::max(0.0, centre.p_d - hd), std::min(p_d_max, centre.p_d + hd),
                               opt.polish_iterations, row);
        else
            row(centre.p_d);
        if (polished_value > out.value + opt.tie_tolerance) {
            out.argmax = polished;
            out.value = polished_value;
        }
    }
    return out;
}

template <class Objective, class UpperBound>
    requires std::invocable<UpperBound &, const PowerAllocation &>
PowerSearchResult maximize_over_powers(double p_u_max, double p_d_max, Objective &&objective,
                                       UpperBound &&upper_bound, const PowerSearchOptions &opt = {})
{
    return maximize_over_powers(
        p_u_max, p_d_max, std::forward<Objective>(objective), std::forward<UpperBound>(upper_bound),
        [](double) { return std::numeric_limits<double>::infinity(); }, opt);
}

template <class Objective>
PowerSearchResult maximize_over_powers(double p_u_max, double p_d_max, Objective &&objective,
                                       const PowerSearchOptions &opt = {})
{
    return maximize_over_powers(
        p_u_max, p_d_max, std::forward<Objective>(objective),
        [](const PowerAllocation &) { return std::numeric_limits<double>::infinity(); }, opt);
}

} // namespace fdcran
