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


#include <catch2/catch_amalgamated.hpp>

#include "fdcran/config.hpp"
#include "fdcran/oracle.hpp"
#include "fdcran/rates.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace fdcran;

namespace {

// 4096 panels, fig2 parameters with C = 10
constexpr double FROZEN_TAN = 0.46595784875472246;
constexpr double FROZEN_SIC = 1.83304837966781475;
constexpr double FROZEN_FDCRAN = 4.22767118071681836;

// alpha = beta_du = 0.4, beta_ud = 0.04, gamma_ud = 4, P = 20 dB, C = 10
SystemParams fig2_params(double c = 10.0)
{
    ParamsConfig cfg = preset_fig2().base;
    cfg.c_u = cfg.c_d = c;
    return cfg.to_params();
}

SystemParams with_powers(SystemParams p, double p_u, double p_d)
{
    p.p_u_max = p_u;
    p.p_d_max = p_d;
    return p;
}

} // namespace

// ---------------------------------------------------------------------------
// half duplex, single-cell processing

TEST_CASE("hd_scp - examples")
{
    SECTION("no interference, fronthaul slack")
    {
        const auto r = hd_scp({.p_u_max = 3, .p_d_max = 3, .c_u = 10, .c_d = 10});
        CHECK(r.r_u == 2.0);
        CHECK(r.r_d == 2.0);
        CHECK(r.r_eq == 1.0);
        CHECK(r.diagnostic("f_star") == 0.5);
    }
    SECTION("inter-cell interference treated as noise")
    {
        // log2(1 + 100 / 33), scipy-independent evaluation in tests/oracles
        const auto r = hd_scp({.alpha = 0.4, .p_u_max = 100, .p_d_max = 100, .c_u = 10, .c_d = 10});
        CHECK(r.r_u == Catch::Approx(2.010888316142736).epsilon(1e-14));
    }
    SECTION("zero uplink fronthaul")
    {
        const auto r = hd_scp({.alpha = 0.4, .p_u_max = 100, .p_d_max = 100, .c_u = 0, .c_d = 10});
        CHECK(r.r_u == 0.0);
        CHECK(r.r_eq == 0.0);
    }
    SECTION("both directions zero: no time split is reported")
    {
        const auto r = hd_scp({.p_u_max = 0, .p_d_max = 0, .c_u = 10, .c_d = 10});
        CHECK(r.r_eq == 0.0);
        CHECK_FALSE(r.diagnostic("f_star").has_value());
    }
    SECTION("fronthaul cap applies before the time split")
    {
        const auto r = hd_scp({.p_u_max = 1000, .p_d_max = 1000, .c_u = 1.5, .c_d = 3});
        CHECK(r.r_u == 1.5);
        CHECK(r.r_d == 3.0);
        CHECK(r.r_eq == Catch::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("time_shared_equal_rate - closed form matches numeric maximization over f")
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 12.0);
    for (int i = 0; i < 20; ++i) {
        const double ru = u(rng), rd = u(rng);
        CHECK(std::abs(time_shared_equal_rate(ru, rd) - oracle::numeric_time_share(ru, rd)) < 1e-6);
    }
    CHECK(time_shared_equal_rate(0.0, 0.0) == 0.0);
    CHECK(time_shared_equal_rate(0.0, 5.0) == 0.0);
    CHECK(time_shared_equal_rate(3.0, 3.0) == 1.5);
}

// ---------------------------------------------------------------------------
// half duplex, C-RAN

TEST_CASE("hd_cran_uplink - examples")
{
    SECTION("flat channel, direct substitution")
    {
        const auto r = hd_cran_uplink({.p_u_max = 1, .c_u = 1});
        REQUIRE(r.sigma_u_sq.has_value());
        CHECK(*r.sigma_u_sq == Catch::Approx(2.0).epsilon(1e-15));
        CHECK(r.rate == Catch::Approx(std::log2(4.0 / 3.0)).epsilon(1e-13));
    }
    SECTION("ample fronthaul approaches C(P)")
    {
        const auto r = hd_cran_uplink({.p_u_max = 100, .c_u = 30});
        CHECK(std::abs(r.rate - 6.658211348390355) < 1e-6);
        CHECK(std::abs(r.rate - std::log2(101.0)) < 1e-6);
    }
    SECTION("alpha = 0.4 against adaptive quadrature and the circulant oracle")
    {
        const SystemParams p{.alpha = 0.4, .p_u_max = 100, .c_u = 10};
        const auto r = hd_cran_uplink(p);
        CHECK(std::abs(r.rate - 5.8934979563896075) < 1e-9);
        CHECK(*r.sigma_u_sq == Catch::Approx(0.1300097751710655).epsilon(1e-14));
        CHECK(std::abs(r.rate - oracle::circulant_uplink_rate(0.4, 100, *r.sigma_u_sq, 512)) < 1e-3);
    }
    SECTION("no fronthaul")
    {
        const auto r = hd_cran_uplink({.alpha = 0.4, .p_u_max = 100, .c_u = 0});
        CHECK(r.rate == 0.0);
        CHECK_FALSE(r.sigma_u_sq.has_value());
    }
}

TEST_CASE("hd_cran_downlink - examples")
{
    SECTION("identity channel")
    {
        const auto r = hd_cran_downlink({.p_d_max = 3, .c_d = 2}, zf_precoder(0.0));
        CHECK(r.p_s == Catch::Approx(2.25).epsilon(1e-15));
        CHECK(r.sigma_d_sq == Catch::Approx(0.75).epsilon(1e-15));
        CHECK(r.rate == Catch::Approx(std::log2(1.0 + 2.25 / 1.75)).epsilon(1e-14));
        CHECK(r.rate == Catch::Approx(1.1926).margin(1e-4));
    }
    SECTION("ideal fronthaul leaves the ZF gain")
    {
        const auto r = hd_cran_downlink({.alpha = 0.4, .p_d_max = 100, .c_d = 1000}, zf_precoder(0.4));
        CHECK(std::abs(r.rate - 4.498250867527825) < 1e-9);
        CHECK(std::abs(r.rate - std::log2(1.0 + 100 * 0.216)) < 1e-9);
    }
    SECTION("no fronthaul")
    {
        const auto r = hd_cran_downlink({.alpha = 0.4, .p_d_max = 100, .c_d = 0}, zf_precoder(0.4));
        CHECK(r.rate == 0.0);
        CHECK(r.p_s == 0.0);
        CHECK(r.sigma_d_sq == 100.0);
    }
    SECTION("leakage of a non-ZF precoder lowers the rate")
    {
        const auto identity = Precoder::custom(std::vector<double>(4097, 1.0));
        const SystemParams p{.alpha = 0.4, .p_d_max = 100, .c_d = 1000};
        // identity filter: h~_0 = 1, leakage alpha^2, SINR = P / (1 + 2 alpha^2 P)
        const auto r = hd_cran_downlink(p, identity);
        CHECK(r.rate == Catch::Approx(std::log2(1.0 + 100.0 / 33.0)).epsilon(1e-10));
    }
}

TEST_CASE("hd_cran - examples")
{
    const auto zf = zf_precoder(0.4);
    const auto r = hd_cran(fig2_params(), zf);
    // frozen: scipy quadrature of the uplink integral + closed-form ZF downlink
    CHECK(std::abs(r.r_eq - 2.4961608688035137) < 1e-9);
    CHECK(r.diagnostic("f_star").value() == Catch::Approx(r.r_d / (r.r_u + r.r_d)));
    CHECK(r.diagnostic("sigma_u_sq").has_value());
    CHECK(r.diagnostic("sigma_d_sq").has_value());
    CHECK(r.diagnostic("p_s").has_value());

    SystemParams no_up = fig2_params();
    no_up.c_u = 0.0;
    CHECK(hd_cran(no_up, zf).r_eq == 0.0);
}

// ---------------------------------------------------------------------------
// full duplex, single-cell processing

TEST_CASE("fd_scp - decoupled links use full power")
{
    const SystemParams p{.p_u_max = 3, .p_d_max = 3, .c_u = 10, .c_d = 10};
    for (auto sic : {SicMode::TreatAsNoise, SicMode::Sic}) {
        const auto r = fd_scp(p, sic);
        CHECK(r.r_eq == 2.0);
        CHECK(r.diagnostic("p_u_star") == 3.0);
        CHECK(r.diagnostic("p_d_star") == 3.0);
    }
}

TEST_CASE("fd_scp - SIC collapses to treat-as-noise without intra-cell interference")
{
    SystemParams p = fig2_params();
    p.gamma_ud = 0.0;
    const auto tan = fd_scp(p, SicMode::TreatAsNoise);
    const auto sic = fd_scp(p, SicMode::Sic);
    CHECK(sic.r_eq == tan.r_eq);
    CHECK(sic.diagnostics == tan.diagnostics);
}

TEST_CASE("fd_scp - Fig. 2 operating point")
{
    const auto p = fig2_params();
    const auto sic = fd_scp(p, SicMode::Sic);
    const auto tan = fd_scp(p, SicMode::TreatAsNoise);
    // frozen after verification against the 512x512 exhaustive grid (below) and
    // an 8001x8001 numpy grid (tests/oracles), both of which the search matches
    // or exceeds
    CHECK(sic.r_eq == Catch::Approx(FROZEN_SIC).epsilon(1e-12));
    CHECK(tan.r_eq == Catch::Approx(FROZEN_TAN).epsilon(1e-12));
    CHECK(sic.r_eq >= 1.8330067669769514 - 1e-9);
    CHECK(tan.r_eq >= 0.4659508371993317 - 1e-9);
    CHECK(sic.r_eq - 1.8330067669769514 < 1e-4);
    CHECK(tan.r_eq - 0.4659508371993317 < 1e-4);

    const auto exh = oracle::exhaustive_power_opt(p, SicMode::Sic, 512);
    CHECK(std::abs(exh.r_eq - sic.r_eq) < 1e-3);
    CHECK(sic.r_eq >= exh.r_eq - 1e-6);
    CHECK(std::abs(exh.p_u_star - *sic.diagnostic("p_u_star")) <= 100.0 / 511);
    CHECK(std::abs(exh.p_d_star - *sic.diagnostic("p_d_star")) <= 100.0 / 511);
}

// ---------------------------------------------------------------------------
// full duplex, C-RAN

TEST_CASE("fd_cran_uplink - examples")
{
    SECTION("no D-U interference reduces exactly to the half-duplex uplink")
    {
        SystemParams p = fig2_params();
        p.beta_du = 0.0;
        const auto zf = zf_precoder(p.alpha);
        for (PowerAllocation pw : {PowerAllocation{100, 100}, PowerAllocation{12.5, 70}, PowerAllocation{0.3, 0}}) {
            const auto fd = fd_cran_uplink(p, pw, zf);
            const auto hd = hd_cran_uplink(with_powers(p, pw.p_u, pw.p_d), zf.panels());
            CHECK(fd.rate == hd.rate);
            CHECK(fd.sigma_u_sq == hd.sigma_u_sq);
        }
    }
    SECTION("impulse precoder has R_g(2) = 0")
    {
        const SystemParams p{.beta_du = 0.4, .p_u_max = 10, .p_d_max = 20, .c_u = 3};
        const auto r = fd_cran_uplink(p, {10, 20}, zf_precoder(0.0));
        CHECK(*r.sigma_u_sq == Catch::Approx((1 + 10 + 2 * 0.16 * 20) / 7.0).epsilon(1e-14));
    }
    SECTION("Fig. 2 full power against the explicit N-cell covariance oracle")
    {
        const auto p = fig2_params();
        const auto zf = zf_precoder(p.alpha);
        const auto r = fd_cran_uplink(p, PowerAllocation::full(p), zf);
        const auto check = oracle::fd_cran_uplink_check(p, PowerAllocation::full(p), zf, 512);
        CHECK(std::abs(*r.sigma_u_sq - check.sigma_u_sq) < 1e-9);
        CHECK(std::abs(r.rate - check.rate) < 1e-3);
    }
}

TEST_CASE("fd_cran_downlink - examples")
{
    const auto zf = zf_precoder(0.4);
    SECTION("no U-D interference equals the half-duplex downlink")
    {
        SystemParams p = fig2_params();
        p.beta_ud = p.gamma_ud = 0.0;
        for (auto sic : {SicMode::TreatAsNoise, SicMode::Sic})
            CHECK(fd_cran_downlink(p, PowerAllocation::full(p), zf, sic, 5.0) == hd_cran_downlink(p, zf).rate);
    }
    SECTION("SIC equals treat-as-noise for gamma_ud = 0")
    {
        SystemParams p = fig2_params();
        p.gamma_ud = 0.0;
        for (double r_u : {0.0, 2.0, 6.0})
            CHECK(fd_cran_downlink(p, {40, 90}, zf, SicMode::Sic, r_u) ==
                  fd_cran_downlink(p, {40, 90}, zf, SicMode::TreatAsNoise));
    }
    SECTION("strong intra-cell interference under SIC recovers the interference-free t1")
    {
        SystemParams p = fig2_params();
        const PowerAllocation pw{50, 100};
        const double r_u = 3.0;
        p.gamma_ud = 0.0;
        const double t1 = fd_cran_downlink(p, pw, zf, SicMode::TreatAsNoise);
        double prev = -1.0;
        for (double g = 0.0; g <= 100.0; g += 0.5) {
            p.gamma_ud = g;
            const double r = fd_cran_downlink(p, pw, zf, SicMode::Sic, r_u);
            CHECK(r <= t1 + 1e-12);
            if (g >= 4.0) {
                // past the SIC threshold the rate only recovers
                CHECK(r >= prev - 1e-12);
            }
            prev = r;
        }
        CHECK(prev == Catch::Approx(t1).epsilon(1e-12));
    }
}

TEST_CASE("fd_cran - examples")
{
    SECTION("no cross interference and ample fronthaul")
    {
        const SystemParams p{.alpha = 0.3, .p_u_max = 100, .p_d_max = 100, .c_u = 1000, .c_d = 1000};
        const auto zf = zf_precoder(0.3);
        const auto r = fd_cran(p, zf, SicMode::Sic);
        // the downlink binds; the uplink power backs off to the smallest value
        // that keeps up within the tie tolerance
        const double down = hd_cran_downlink(p, zf).rate;
        REQUIRE(down < hd_cran_uplink(p).rate);
        CHECK(std::abs(r.r_eq - down) <= 1e-9);
        CHECK(r.diagnostic("p_d_star") == 100.0);
        CHECK(r.diagnostic("p_u_star") < 100.0);
    }
    SECTION("Fig. 2 at C = 10: full-duplex gain over half-duplex C-RAN")
    {
        const auto p = fig2_params();
        const auto zf = zf_precoder(p.alpha);
        const auto fd = fd_cran(p, zf, SicMode::Sic);
        const auto hd = hd_cran(p, zf);
        CHECK(fd.r_eq == Catch::Approx(FROZEN_FDCRAN).epsilon(1e-12));
        const double ratio = fd.r_eq / hd.r_eq;
        CHECK(ratio >= 1.6);
        CHECK(ratio <= 1.8);
    }
    SECTION("Fig. 3 at gamma_ud = 4: SIC beats treat-as-noise")
    {
        const auto p = fig2_params();
        const auto zf = zf_precoder(p.alpha);
        CHECK(fd_cran(p, zf, SicMode::Sic).r_eq > fd_cran(p, zf, SicMode::TreatAsNoise).r_eq + 1.0);
    }
    SECTION("full-power mode")
    {
        const auto p = fig2_params();
        PowerSearchOptions opt;
        opt.full_power = true;
        const auto zf = zf_precoder(p.alpha);
        const auto r = fd_cran(p, zf, SicMode::Sic, opt);
        CHECK(r.diagnostic("p_u_star") == p.p_u_max);
        CHECK(r.diagnostic("p_d_star") == p.p_d_max);
        CHECK(r.r_eq <= fd_cran(p, zf, SicMode::Sic).r_eq);
    }
    SECTION("ZF singularity surfaces through compute_scheme")
    {
        SystemParams p = fig2_params();
        p.alpha = 0.55;
        CHECK_THROWS_AS(compute_scheme(SchemeId::FdCran, p), ZfSingular);
        CHECK_NOTHROW(compute_scheme(SchemeId::FdScp, p));
    }
}

// ---------------------------------------------------------------------------
// properties

TEST_CASE("property - full-duplex formulas reduce exactly to half-duplex ones without cross-link gains")
{
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> gain(0.0, 0.45), power(0.0, 200.0), cap(0.0, 15.0);
    for (int i = 0; i < 25; ++i) {
        SystemParams p{.alpha = gain(rng), .p_u_max = 200, .p_d_max = 200, .c_u = cap(rng), .c_d = cap(rng)};
        const PowerAllocation pw{power(rng), power(rng)};
        const SystemParams hd = with_powers(p, pw.p_u, pw.p_d);
        const auto zf = zf_precoder(p.alpha, 512);
        for (auto sic : {SicMode::TreatAsNoise, SicMode::Sic}) {
            const auto scp = fd_scp_at(p, pw, sic);
            const auto hd_scp_r = hd_scp(hd);
            CHECK(scp.r_u == hd_scp_r.r_u);
            CHECK(scp.r_d == hd_scp_r.r_d);
            const auto cran = fd_cran_at(p, pw, zf, sic);
            CHECK(cran.r_u == hd_cran_uplink(hd, 512).rate);
            CHECK(cran.r_d == hd_cran_downlink(hd, zf).rate);
        }
    }
}

TEST_CASE("property - duplex gain is 2 for symmetric interference-free links with ample fronthaul")
{
    SolverOptions opt;
    opt.panels = 1024;
    for (double alpha : {0.0, 0.2, 0.4}) {
        const SystemParams p{.alpha = alpha, .p_u_max = 100, .p_d_max = 100, .c_u = 1000, .c_d = 1000};
        const double scp_ratio = compute_scheme(SchemeId::FdScpSic, p, opt).r_eq / compute_scheme(SchemeId::HdScp, p, opt).r_eq;
        CHECK(scp_ratio >= 1.99);
        CHECK(scp_ratio <= 2.0 + 1e-12);
    }
    const SystemParams flat{.p_u_max = 100, .p_d_max = 100, .c_u = 1000, .c_d = 1000};
    const double cran_ratio =
        compute_scheme(SchemeId::FdCranSic, flat, opt).r_eq / compute_scheme(SchemeId::HdCran, flat, opt).r_eq;
    CHECK(cran_ratio >= 1.99);
    CHECK(cran_ratio <= 2.0 + 1e-12);
}

TEST_CASE("property - SIC never loses to treat-as-noise")
{
    SolverOptions opt;
    opt.panels = 512;
    for (double g : {0.0, 0.5, 1.0, 2.0, 4.0, 8.0})
        for (double c : {1.0, 4.0, 10.0}) {
            SystemParams p = fig2_params(c);
            p.gamma_ud = g;
            CHECK(compute_scheme(SchemeId::FdScpSic, p, opt).r_eq >=
                  compute_scheme(SchemeId::FdScp, p, opt).r_eq - 1e-9);
            CHECK(compute_scheme(SchemeId::FdCranSic, p, opt).r_eq >=
                  compute_scheme(SchemeId::FdCran, p, opt).r_eq - 1e-9);
        }
}

TEST_CASE("property - every scheme is non-decreasing in each fronthaul capacity")
{
    SolverOptions opt;
    opt.panels = 512;
    for (SchemeId id : kAllSchemes)
        for (int which = 0; which < 2; ++which) {
            double prev = -1.0;
            for (int i = 0; i < 20; ++i) {
                SystemParams p = fig2_params();
                (which == 0 ? p.c_u : p.c_d) = 0.75 * i;
                const double r = compute_scheme(id, p, opt).r_eq;
                INFO(to_string(id) << (which == 0 ? " c_u=" : " c_d=") << 0.75 * i);
                CHECK(r >= prev - 1e-9);
                prev = r;
            }
        }
}

TEST_CASE("property - reported argmax reproduces the reported rate")
{
    SolverOptions opt;
    opt.panels = 512;
    for (double g : {0.0, 2.0, 6.0})
        for (double c : {2.0, 10.0}) {
            SystemParams p = fig2_params(c);
            p.gamma_ud = g;
            const auto zf = zf_precoder(p.alpha, opt.panels);
            for (auto sic : {SicMode::TreatAsNoise, SicMode::Sic}) {
                const auto scp = fd_scp(p, sic);
                const PowerAllocation a{*scp.diagnostic("p_u_star"), *scp.diagnostic("p_d_star")};
                CHECK(std::abs(fd_scp_at(p, a, sic).r_eq - scp.r_eq) <= 1e-12);

                const auto cran = fd_cran(p, zf, sic);
                const PowerAllocation b{*cran.diagnostic("p_u_star"), *cran.diagnostic("p_d_star")};
                CHECK(std::abs(fd_cran_at(p, b, zf, sic).r_eq - cran.r_eq) <= 1e-12);
            }
        }
}
