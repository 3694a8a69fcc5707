// SPDX-License-Identifier: Apache-2.0
//
// macromrc: error-rate analysis for MRC receivers in macrodiversity Rayleigh fading
// Copyright (C) 2026 The macromrc authors
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

#include "macromrc/errors.hpp"
#include "macromrc/gamma_dist.hpp"
#include "macromrc/mcsim.hpp"
#include "macromrc/oracles.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

using namespace macromrc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    // two antennas, P1 = diag(1, 2), one interferer P2 = diag(2, 1), |s|^2 = 1, sigma^2 = 0
    SystemConfig hand_config()
    {
        SystemConfig c;
        c.desired.entries = {1, 2};
        c.interferers = {{{2, 1}, "i"}};
        return c;
    }

    const PairCoefficients &pair(const MixtureCoefficients &m, std::size_t i, std::size_t k)
    {
        for (const auto &p : m.pairs)
            if (p.i == i && p.k == k)
                return p;
        FAIL("pair not found");
        return m.pairs.front();
    }
}

TEST_CASE("mixture coefficients of the two-antenna hand example", "[gamma_dist]")
{
    const auto c = hand_config();
    const auto m = mixture_coefficients(c, unit_profile(c));
    REQUIRE(m.pairs.size() == 2);
    CHECK(m.q == std::vector<double>{2, 2});

    const auto &p12 = pair(m, 0, 1);
    CHECK_THAT(p12.upsilon, WithinAbs(-2, 1e-15));
    CHECK_THAT(p12.nu, WithinAbs(-1, 1e-15));
    CHECK_THAT(p12.beta, WithinAbs(0.5, 1e-15));
    CHECK_THAT(p12.xi, WithinAbs(-0.5, 1e-15));

    const auto &p21 = pair(m, 1, 0);
    CHECK_THAT(p21.upsilon, WithinAbs(2, 1e-15));
    CHECK_THAT(p21.nu, WithinAbs(1, 1e-15));
    CHECK_THAT(p21.beta, WithinAbs(0.5, 1e-15));
    CHECK_THAT(p21.xi, WithinAbs(0.5, 1e-15));
}

TEST_CASE("derived coefficients are consistent with their definitions", "[gamma_dist]")
{
    const auto c = scenario_to_config(reference_scenario(6, 10));
    const auto m = mixture_coefficients(c, unit_profile(c));
    const auto &p1 = c.desired.entries;
    for (const auto &pc : m.pairs)
    {
        const double Pi = p1[pc.i], Pk = p1[pc.k], Qi = m.q[pc.i];
        CHECK_THAT(pc.omega, WithinRel((1.0 - pc.beta * Qi) / Pi, 1e-10));
        CHECK_THAT(pc.alpha, WithinRel(Qi / Pi + pc.omega / (2.0 * pc.beta), 1e-10));
        // expanded beta; the sign convention follows from beta = nu / upsilon
        const double num = 1.0 / Pk - 1.0 / Pi;
        const double den = c.interferers[0].entries[pc.k] - c.interferers[0].entries[pc.i];
        if (den != 0.0)
            CHECK_THAT(pc.beta, WithinRel(num / den, 1e-10));
    }
}

TEST_CASE("coincident and near-singular inputs", "[gamma_dist]")
{
    CHECK_THROWS_AS(mixture_coefficients({1, 1, 2}, {1, 2, 3}), CoincidentPowerError);
    CHECK_THROWS_AS(build_gamma_model({1, 1, 2}, {1, 2, 3}), CoincidentPowerError);
    // equal d on a pair while the rest differ: upsilon of that pair vanishes relative to P
    CHECK_THROWS_AS(mixture_coefficients({1, 2, 3}, {2, 2, 1}), CoincidentPowerError);
    AnalysisOptions o;
    o.perturb_epsilon_rel = 1e-6;
    const auto m = build_gamma_model({1, 1, 2}, {1, 2, 3}, o);
    CHECK(m.desired_perturbed);
    const auto n = build_gamma_model({1, 2, 3}, {2, 2, 1}, o);
    CHECK(n.interference_perturbed);
}

TEST_CASE("geometric profiles with opposite decay are exactly singular", "[gamma_dist]")
{
    // P1_i P2_i is constant, so every triple determinant vanishes
    const auto c = scenario_to_config(reference_scenario(8, std::numeric_limits<double>::infinity()));
    CHECK_THROWS_AS(mixture_coefficients(c, unit_profile(c)), NearSingularError);
    AnalysisOptions o;
    o.perturb_epsilon_rel = 1e-5;
    CHECK(build_gamma_model(c, unit_profile(c), o).interference_perturbed);
}

TEST_CASE("joint density", "[gamma_dist]")
{
    const auto c = hand_config();
    const auto m = mixture_coefficients(c, unit_profile(c));
    CHECK(joint_pdf(-1, 5, m) == 0.0);
    CHECK(joint_pdf(1, -1, m) == 0.0);
    // Y = 2 x1 + x2 lies in [x, 2x] given X = x
    CHECK(joint_pdf(1, 0.5, m) == 0.0);
    CHECK(joint_pdf(1, 2.5, m) == 0.0);
    CHECK(joint_pdf(1, 1.5, m) > 0.0);
    // total mass
    CHECK_THAT(oracles::cdf_via_quadrature(1e9, m), WithinAbs(1.0, 1e-8));
}

TEST_CASE("CDF against independent references", "[gamma_dist]")
{
    const auto c = hand_config();
    const auto m = mixture_coefficients(c, unit_profile(c));
    // 40-digit 1-D integration over the exact region (tests/tools: see README)
    CHECK_THAT(gamma_cdf(1.0, m), WithinAbs(0.26293758524180524444, 1e-13));
    CHECK_THAT(oracles::cdf_via_quadrature(1.0, m), WithinAbs(gamma_cdf(1.0, m), 1e-8));

    const auto m3 = mixture_coefficients({1, 2, 3.5}, {1, 3, 2});
    CHECK_THAT(gamma_cdf(0.7, m3), WithinAbs(0.0401255266107134, 1e-14));
}

TEST_CASE("CDF limits and monotonicity", "[gamma_dist]")
{
    for (int s : {1, 3, 8, 13, 16})
    {
        AnalysisOptions o;
        o.perturb_epsilon_rel = 1e-5;
        const auto cfg = scenario_to_config(reference_scenario(s, 10));
        const auto model = build_gamma_model(cfg, unit_profile(cfg), o);
        INFO("S" << s);
        CHECK(gamma_cdf(0.0, model) == 0.0);
        CHECK(gamma_cdf(-3.0, model) == 0.0);
        CHECK_THAT(gamma_cdf(1e12, model), WithinAbs(1.0, 1e-9));
        double prev = 0.0;
        for (double r = 1e-4; r < 1e6; r *= 1.5)
        {
            const double v = gamma_cdf(r, model);
            CHECK(v >= prev - 1e-12);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
            prev = v;
        }
    }
}

TEST_CASE("constant-weight and unbounded routes", "[gamma_dist]")
{
    const auto s = build_gamma_model({1, 2, 3}, {2, 2, 2});
    CHECK(s.kind == ModelKind::scalar);
    for (double r : {0.05, 0.7, 3.0})
        CHECK_THAT(gamma_cdf(r, s), WithinAbs(oracles::scalar_cdf_via_quadrature(r, {1, 2, 3}, 2), 1e-9));

    const auto u = build_gamma_model({1, 2}, {0, 0});
    CHECK(u.kind == ModelKind::unbounded);
    CHECK(gamma_cdf(1e9, u) == 0.0);
    CHECK_THROWS_AS(build_gamma_model({1, 2}, {0, 1}), InvalidParameter);
}

TEST_CASE("global scaling leaves the CDF unchanged", "[gamma_dist][property]")
{
    const auto cfg = scenario_to_config(reference_scenario(6, 10));
    const auto sc = cfg.scaled(7.3);
    const auto a = build_gamma_model(cfg, unit_profile(cfg));
    const auto b = build_gamma_model(sc, unit_profile(sc));
    for (double r = 0.01; r < 1e4; r *= 3)
        CHECK_THAT(gamma_cdf(r, b), WithinAbs(gamma_cdf(r, a), 1e-10));
}

TEST_CASE("outage probability", "[gamma_dist]")
{
    const auto cfg = scenario_to_config(reference_scenario(4, 10));
    const auto prof = unit_profile(cfg);
    AnalysisOptions o;
    o.perturb_epsilon_rel = 1e-5;
    CHECK(outage_probability(cfg, prof, 0.0, false, o) == 0.0);
    CHECK(outage_probability(cfg, prof, -std::numeric_limits<double>::infinity(), true, o) == 0.0);
    CHECK(outage_probability(cfg, prof, std::numeric_limits<double>::infinity(), false, o) == 1.0);

    // Monte Carlo: empirical CDF of sampled gamma at threshold 1
    const std::size_t n = 2000000;
    const auto g = sample_gamma(cfg, prof, n, 99);
    const double emp = double(std::count_if(g.begin(), g.end(), [](double v) { return v < 1.0; })) / double(n);
    const double p = outage_probability(cfg, prof, 1.0, false, o);
    const double se = std::sqrt(p * (1 - p) / double(n));
    CHECK(std::abs(emp - p) <= 3 * se);
}
