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
#include "sweep.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fdcran {

inline constexpr std::string_view kCsvHeader =
    "sweep_var,value,scheme,r_u,r_d,r_eq,sigma_u_sq,sigma_d_sq,p_u_star,p_d_star,f_star";
inline constexpr std::string_view kCsvOracleColumns = ",oracle_r_u,oracle_r_eq";

namespace detail {

inline std::string csv_number(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

inline std::string csv_number(const std::optional<double> &v) { return v ? csv_number(*v) : "NA"; }

inline std::vector<std::string_view> split_commas(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        out.push_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos)
            return out;
        pos = comma + 1;
    }
}

inline double parse_number(std::string_view s, int line)
{
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::runtime_error("csv line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
    return v;
}

inline std::optional<double> parse_optional(std::string_view s, int line)
{
    if (s == "NA")
        return std::nullopt;
    return parse_number(s, line);
}

} // namespace detail

/// CSV text: fixed header, 9 significant digits, NA for absent diagnostics.
inline std::string to_csv(const SweepTable &table)
{
    std::string out(kCsvHeader);
    if (table.has_oracle)
        out += kCsvOracleColumns;
    out += '\n';
    for (const auto &r : table.rows) {
        using detail::csv_number;
        out += r.sweep_var + ',' + csv_number(r.value) + ',' + std::string(to_string(r.scheme)) + ',' +
               csv_number(r.r_u) + ',' + csv_number(r.r_d) + ',' + csv_number(r.r_eq) + ',' +
               csv_number(r.sigma_u_sq) + ',' + csv_number(r.sigma_d_sq) + ',' + csv_number(r.p_u_star) + ',' +
               csv_number(r.p_d_star) + ',' + csv_number(r.f_star);
        if (table.has_oracle)
            out += ',' + csv_number(r.oracle_r_u) + ',' + csv_number(r.oracle_r_eq);
        out += '\n';
    }
    return out;
}

inline SweepTable parse_csv(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("csv: missing header");
    SweepTable table;
    if (line == kCsvHeader)
        table.has_oracle = false;
    else if (line == std::string(kCsvHeader) + std::string(kCsvOracleColumns))
        table.has_oracle = true;
    else
        throw std::runtime_error("csv: unexpected header '" + line + "'");
    const std::size_t columns = table.has_oracle ? 13 : 11;

    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty())
            continue;
        const auto f = detail::split_commas(line);
        if (f.size() != columns)
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": expected " +
                                     std::to_string(columns) + " fields");
        SweepRow r;
        r.sweep_var = std::string(f[0]);
        r.value = detail::parse_number(f[1], line_no);
        const auto scheme = parse_scheme(f[2]);
        if (!scheme)
            throw std::runtime_error("csv line " + std::to_string(line_no) + ": unknown scheme");
        r.scheme = *scheme;
        r.r_u = detail::parse_number(f[3], line_no);
        r.r_d = detail::parse_number(f[4], line_no);
        r.r_eq = detail::parse_number(f[5], line_no);
        r.sigma_u_sq = detail::parse_optional(f[6], line_no);
        r.sigma_d_sq = detail::parse_optional(f[7], line_no);
        r.p_u_star = detail::parse_optional(f[8], line_no);
        r.p_d_star = detail::parse_optional(f[9], line_no);
        r.f_star = detail::parse_optional(f[10], line_no);
        if (table.has_oracle) {
            r.oracle_r_u = detail::parse_optional(f[11], line_no);
            r.oracle_r_eq = detail::parse_optional(f[12], line_no);
        }
        table.rows.push_back(std::move(r));
    }
    return table;
}

inline void write_text_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out)
        throw std::runtime_error("failed writing '" + path + "'");
}

inline void emit_csv(const SweepTable &table, const std::string &path) { write_text_file(path, to_csv(table)); }

// ---------------------------------------------------------------------------
// SVG line chart of r_eq against the swept value

struct PlotSpec {
    std::string title;
    std::string x_label;  ///< defaults to the sweep variable name
    std::string y_label = "equal per-cell rate [bit/s/Hz]";
    int width = 720;
    int height = 480;
};

namespace detail {

inline std::string fmt2(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

inline std::string tick_label(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

inline std::string xml_escape(std::string_view s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

inline std::string_view scheme_color(SchemeId id)
{
    static constexpr std::array<std::string_view, 6> palette{"#1f77b4", "#ff7f0e", "#2ca02c",
                                                             "#d62728", "#9467bd", "#8c564b"};
    return palette[static_cast<std::size_t>(id)];
}

inline std::string_view scheme_label(SchemeId id)
{
    switch (id) {
    case SchemeId::HdScp: return "HD-SCP";
    case SchemeId::HdCran: return "HD-C-RAN";
    case SchemeId::FdScp: return "FD-SCP";
    case SchemeId::FdScpSic: return "FD-SCP (SIC)";
    case SchemeId::FdCran: return "FD-C-RAN";
    case SchemeId::FdCranSic: return "FD-C-RAN (SIC)";
    }
    return "?";
}

} // namespace detail

/// Standalone SVG: one polyline with point markers per scheme, in SchemeId
/// order, plus axes, ticks and a legend. Output depends only on the inputs.
inline std::string render_svg(const SweepTable &table, const PlotSpec &plot = {})
{
    if (table.rows.empty())
        throw std::invalid_argument("cannot plot an empty table");

    double x_min = table.rows.front().value, x_max = x_min, y_max = 0.0;
    std::vector<SchemeId> schemes;
    for (const auto &r : table.rows) {
        x_min = std::min(x_min, r.value);
        x_max = std::max(x_max, r.value);
        y_max = std::max(y_max, r.r_eq);
        if (std::find(schemes.begin(), schemes.end(), r.scheme) == schemes.end())
            schemes.push_back(r.scheme);
    }
    std::sort(schemes.begin(), schemes.end());
    if (x_max == x_min) {
        x_min -= 0.5;
        x_max += 0.5;
    }
    y_max = y_max > 0.0 ? 1.05 * y_max : 1.0;

    const double left = 70, right = 20, top = 40, bottom = 55;
    const double pw = plot.width - left - right, ph = plot.height - top - bottom;
    auto sx = [&](double x) { return left + (x - x_min) / (x_max - x_min) * pw; };
    auto sy = [&](double y) { return top + ph - y / y_max * ph; };
    using detail::fmt2;

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << plot.width << "\" height=\"" << plot.height
        << "\" viewBox=\"0 0 " << plot.width << ' ' << plot.height << "\" font-family=\"sans-serif\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!plot.title.empty())
        svg << "<text x=\"" << fmt2(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
            << detail::xml_escape(plot.title) << "</text>\n";

    // axes and ticks
    svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
        << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(top + ph) << "\" x2=\"" << fmt2(left + pw) << "\" y2=\""
        << fmt2(top + ph) << "\"/>\n"
        << "<line x1=\"" << fmt2(left) << "\" y1=\"" << fmt2(top) << "\" x2=\"" << fmt2(left) << "\" y2=\""
        << fmt2(top + ph) << "\"/>\n"
        << "</g>\n<g font-size=\"11\">\n";
    constexpr int kTicks = 5;
    for (int i = 0; i <= kTicks; ++i) {
        const double xv = x_min + (x_max - x_min) * i / kTicks;
        const double yv = y_max * i / kTicks;
        svg << "<line x1=\"" << fmt2(sx(xv)) << "\" y1=\"" << fmt2(top + ph) << "\" x2=\"" << fmt2(sx(xv))
            << "\" y2=\"" << fmt2(top + ph + 5) << "\" stroke=\"black\"/>"
            << "<text x=\"" << fmt2(sx(xv)) << "\" y=\"" << fmt2(top + ph + 18) << "\" text-anchor=\"middle\">"
            << detail::tick_label(xv) << "</text>\n"
            << "<line x1=\"" << fmt2(left - 5) << "\" y1=\"" << fmt2(sy(yv)) << "\" x2=\"" << fmt2(left)
            << "\" y2=\"" << fmt2(sy(yv)) << "\" stroke=\"black\"/>"
            << "<text x=\"" << fmt2(left - 8) << "\" y=\"" << fmt2(sy(yv) + 4) << "\" text-anchor=\"end\">"
            << detail::tick_label(yv) << "</text>\n";
    }
    svg << "</g>\n";
    const std::string x_label = plot.x_label.empty() ? table.rows.front().sweep_var : plot.x_label;
    svg << "<text x=\"" << fmt2(left + pw / 2) << "\" y=\"" << fmt2(plot.height - 12.0)
        << "\" text-anchor=\"middle\" font-size=\"13\">" << detail::xml_escape(x_label) << "</text>\n"
        << "<text transform=\"translate(18 " << fmt2(top + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\" "
        << "font-size=\"13\">" << detail::xml_escape(plot.y_label) << "</text>\n";

    // one series per scheme
    for (SchemeId id : schemes) {
        const auto color = detail::scheme_color(id);
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.8\" points=\"";
        bool first = true;
        for (const auto &r : table.rows)
            if (r.scheme == id) {
                svg << (first ? "" : " ") << fmt2(sx(r.value)) << ',' << fmt2(sy(r.r_eq));
                first = false;
            }
        svg << "\"/>\n";
        for (const auto &r : table.rows)
            if (r.scheme == id)
                svg << "<circle cx=\"" << fmt2(sx(r.value)) << "\" cy=\"" << fmt2(sy(r.r_eq))
                    << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
    }

    // legend
    svg << "<g font-size=\"12\">\n";
    for (std::size_t i = 0; i < schemes.size(); ++i) {
        const double y = top + 14 + 18.0 * i;
        svg << "<line x1=\"" << fmt2(left + 12) << "\" y1=\"" << fmt2(y) << "\" x2=\"" << fmt2(left + 36)
            << "\" y2=\"" << fmt2(y) << "\" stroke=\"" << detail::scheme_color(schemes[i])
            << "\" stroke-width=\"2\"/>"
            << "<text x=\"" << fmt2(left + 42) << "\" y=\"" << fmt2(y + 4) << "\">"
            << detail::scheme_label(schemes[i]) << "</text>\n";
    }
    svg << "</g>\n</svg>\n";
    return svg.str();
}

inline void emit_svg(const SweepTable &table, const std::string &path, const PlotSpec &plot = {})
{
    write_text_file(path, render_svg(table, plot));
}

} // namespace fdcran
