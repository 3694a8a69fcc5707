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
#include "macromrc/specfun.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

using namespace macromrc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    struct Row
    {
        double x, q, erf, erfc, erfcx, dawson, erfi;
    };

    // 50-digit reference values evaluated at the exact binary x (tests/tools/gen_specfun_reference.py)
    std::vector<Row> reference()
    {
        std::ifstream in(MACROMRC_TEST_DATA "/specfun_reference.csv");
        REQUIRE(in.good());
        std::string line;
        std::getline(in, line);
        std::vector<Row> rows;
        while (std::getline(in, line))
        {
            std::stringstream ss(line);
            std::string f;
            double v[7];
            for (double &t : v)
            {
                std::getline(ss, f, ',');
                t = f == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::strtod(f.c_str(), nullptr);
            }
            rows.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6]});
        }
        return rows;
    }

    // erfc underflows past x ~ 26.5; below the normal range only absolute agreement is meaningful
    double rel(double a, double b)
    {
        if (a == b)
            return 0.0;
        if (std::abs(b) < std::numeric_limits<double>::min())
            return std::abs(a - b) <= 2 * std::numeric_limits<double>::denorm_min() ? 0.0 : 1.0;
        return std::abs(a - b) / std::abs(b);
    }
}

TEST_CASE("specfun matches the high-precision grid to 1e-12", "[specfun]")
{
    const auto rows = reference();
    REQUIRE(rows.size() >= 200);
    double worst = 0.0;
    for (const auto &r : rows)
    {
        INFO("x = " << r.x);
        CHECK(rel(gaussian_q(r.x), r.q) < 1e-12);
        CHECK(rel(macromrc::erf(r.x), r.erf) < 1e-12);
        CHECK(rel(macromrc::erfc(r.x), r.erfc) < 1e-12);
        CHECK(rel(erfcx(r.x), r.erfcx) < 1e-12);
        CHECK(rel(dawson(r.x), r.dawson) < 1e-12);
        if (!std::isnan(r.erfi))
            CHECK(rel(erfi(r.x), r.erfi) < 1e-12);
        worst = std::max({worst, rel(erfcx(r.x), r.erfcx), rel(dawson(r.x), r.dawson)});
    }
    WARN("worst erfcx/dawson relative error " << worst);
}

TEST_CASE("symmetries on the negative axis", "[specfun]")
{
    for (const auto &r : reference())
    {
        if (r.x > 5.0)
            continue;
        INFO("x = " << -r.x);
        CHECK(rel(macromrc::erf(-r.x), -r.erf) < 1e-12);
        CHECK(rel(dawson(-r.x), -r.dawson) < 1e-12);
        CHECK(rel(erfi(-r.x), -r.erfi) < 1e-12);
        CHECK(rel(gaussian_q(-r.x), 1.0 - r.q) < 1e-12);
    }
}

TEST_CASE("Q function", "[specfun]")
{
    CHECK(gaussian_q(0.0) == 0.5);
    CHECK(gaussian_q(std::numeric_limits<double>::infinity()) == 0.0);
    CHECK_THAT(gaussian_q(1.2815515655), WithinAbs(0.1, 1e-10));
}

TEST_CASE("Dawson function", "[specfun]")
{
    CHECK(dawson(0.0) == 0.0);
    const double pi = 3.141592653589793;
    CHECK_THAT(2 / std::sqrt(pi) * std::exp(1.0) * dawson(1.0), WithinRel(erfi(1.0), 1e-13));
    CHECK_THAT(erfi(1.0), WithinAbs(1.6504257588, 1e-10));
    CHECK(macromrc::erf(std::numeric_limits<double>::infinity()) == 1.0);
    // maximum of the Dawson function, 30-digit reference
    CHECK_THAT(dawson(0.9241388730), WithinAbs(0.54104422463518170, 1e-15));
    // asymptote 1/(2x)
    CHECK_THAT(dawson(1e8), WithinRel(0.5e-8, 1e-12));
}

TEST_CASE("scaled complementary error function", "[specfun]")
{
    CHECK(erfcx(0.0) == 1.0);
    CHECK_THAT(erfcx(10.0), WithinAbs(0.05614099274, 1e-11));
    const double pi = 3.141592653589793;
    // two terms of the asymptotic series
    CHECK_THAT(erfcx(100.0), WithinRel((1.0 - 0.5e-4) / (100.0 * std::sqrt(pi)), 1e-8));
    CHECK_THAT(erfcx(1e10), WithinRel(1.0 / (1e10 * std::sqrt(pi)), 1e-12));
    double prev = erfcx(0.0);
    for (double x = 0.01; x < 1e6; x *= 1.37)
    {
        const double v = erfcx(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK(std::isinf(erfcx(-30.0)));
}

TEST_CASE("erfi overflows into an out-of-region error; scaled forms stay finite", "[specfun]")
{
    CHECK(erfi(0.0) == 0.0);
    CHECK_THROWS_AS(erfi(30.0), OutOfRegionError);
    CHECK_THROWS_AS(erfi(-30.0), OutOfRegionError);
    const auto s = erfi_scaled(30.0);
    CHECK(std::isfinite(s.log_scale));
    CHECK(std::isfinite(s.mantissa));
    // erfi(x) = 2/sqrt(pi) e^{x^2} D(x)
    const auto t = erfi_scaled(3.0);
    CHECK_THAT(t.value(), WithinRel(erfi(3.0), 1e-13));
    const auto c = erfc_scaled(3.0);
    CHECK_THAT(c.value(), WithinRel(macromrc::erfc(3.0), 1e-13));
}

TEST_CASE("exp_square helpers keep the low bits of x^2", "[specfun]")
{
    const double x = 25.123456789;
    CHECK_THAT(exp_square(x) * exp_neg_square(x), WithinRel(1.0, 1e-14));
    CHECK_THAT(exp_neg_square(2.0), WithinRel(std::exp(-4.0), 1e-15));
}
