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
#include "macromrc/power_model.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <set>

using namespace macromrc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("exponential profile", "[power_model]")
{
    auto flat = exponential_profile(3, 1, 3);
    for (double v : flat.entries)
        CHECK_THAT(v, WithinRel(1.0, 1e-15));

    // K = 3 / (1 + 1/65 + 1/65^2)
    const double K = 3.0 / (1.0 + 1.0 / 65 + 1.0 / (65.0 * 65.0));
    auto low = exponential_profile(3, 1.0 / 65, 3);
    CHECK_THAT(low.entries[0], WithinRel(K, 1e-14));
    CHECK_THAT(low.entries[0], WithinAbs(2.9538569, 5e-8));
    CHECK_THAT(low.entries[1], WithinAbs(0.04544395, 5e-9));
    CHECK_THAT(low.entries[2], WithinAbs(0.00069914, 5e-9));

    auto high = exponential_profile(3, 65, 3);
    for (int i = 0; i < 3; ++i)
        CHECK_THAT(high.entries[i], WithinRel(low.entries[2 - i], 1e-13));
    CHECK_THAT(high.trace(), WithinRel(3.0, 1e-15));

    CHECK_THROWS_AS(exponential_profile(0, 1, 3), InvalidParameter);
    CHECK_THROWS_AS(exponential_profile(3, 0, 3), InvalidParameter);
    CHECK_THROWS_AS(exponential_profile(3, 1, 0), InvalidParameter);
}

TEST_CASE("scenario parameterisation", "[power_model]")
{
    ScenarioParams s1;
    s1.rho_db = 20;
    s1.varsigma = 1;
    s1.alpha_desired = s1.alpha_interferer = 1.0 / 65;
    const auto c1 = scenario_to_config(s1);
    CHECK_THAT(c1.noise_power, WithinRel(0.01, 1e-14));
    REQUIRE(c1.interferers.size() == 1);
    const auto ref = exponential_profile(3, 1.0 / 65, 3);
    for (int i = 0; i < 3; ++i)
    {
        CHECK_THAT(c1.desired.entries[i], WithinRel(ref.entries[i], 1e-14));
        CHECK_THAT(c1.interferers[0].entries[i], WithinRel(ref.entries[i], 1e-14));
    }

    ScenarioParams s7 = s1;
    s7.varsigma = 10;
    s7.alpha_interferer = 1;
    const auto c7 = scenario_to_config(s7);
    for (double v : c7.interferers[0].entries)
        CHECK_THAT(v, WithinRel(0.1, 1e-14));

    s1.rho_db = std::numeric_limits<double>::infinity();
    CHECK(scenario_to_config(s1).noise_power == 0.0);

    // built-in table matches
    const auto b7 = reference_scenario(7, 20);
    CHECK(b7.varsigma == 10);
    CHECK_THAT(b7.alpha_desired, WithinRel(1.0 / 65, 1e-15));
    CHECK(b7.alpha_interferer == 1);
    const auto b16 = reference_scenario(16, 20);
    CHECK(b16.n_r == 6);
    CHECK(b16.antennas_per_site == 2);
    CHECK(b16.varsigma == 20);
    CHECK_THROWS_AS(reference_scenario(0, 20), InvalidParameter);
    CHECK_THROWS_AS(reference_scenario(21, 20), InvalidParameter);
}

TEST_CASE("six antennas on three sites share each site's power", "[power_model]")
{
    const auto c = scenario_to_config(reference_scenario(16, 20));
    REQUIRE(c.n_r() == 6);
    CHECK_THAT(c.desired.trace(), WithinRel(6.0, 1e-14));
    for (int s = 0; s < 3; ++s)
        CHECK(c.desired.entries[2 * s] == c.desired.entries[2 * s + 1]);
    CHECK_THAT(c.noise_power, WithinRel(0.01, 1e-14));
}

TEST_CASE("aggregate interferers", "[power_model]")
{
    CHECK(aggregate_interferers({}, {}, 3).entries == std::vector<double>{0, 0, 0});
    PowerMatrix a{{1, 2}, "a"}, b{{3, 4}, "b"};
    CHECK(aggregate_interferers({a}, {1}, 2).entries == a.entries);
    CHECK(aggregate_interferers({a, b}, {1, 1}, 2).entries == std::vector<double>{4, 6});
    CHECK(aggregate_interferers({a, b}, {0.5, 2}, 2).entries == std::vector<double>{6.5, 9});
    CHECK_THROWS_AS(aggregate_interferers({a, b}, {1}, 2), InvalidParameter);
    CHECK_THROWS_AS(aggregate_interferers({a}, {1}, 3), InvalidParameter);
}

TEST_CASE("perturbation of coincident desired powers", "[power_model]")
{
    SystemConfig c;
    c.desired.entries = {1, 2, 3};
    CHECK(perturb_coincident_powers(c, 1e-5).desired.entries == c.desired.entries);

    c.desired.entries = {1, 1};
    const auto p = perturb_coincident_powers(c, 1e-5).desired.entries;
    CHECK(p[0] == 1.0);
    CHECK_THAT(p[1], WithinRel(1.00001, 1e-15));

    const auto six = scenario_to_config(reference_scenario(19, 20));
    const auto q = perturb_coincident_powers(six, 1e-5).desired.entries;
    CHECK(coincident_groups(six.desired.entries).size() == 1);
    CHECK(coincident_groups(q).empty());
    CHECK(std::set<double>(q.begin(), q.end()).size() == 6);
}

TEST_CASE("config validation and transforms", "[power_model]")
{
    SystemConfig c;
    c.desired.entries = {1, 2};
    c.interferers.push_back({{0.5, 0.25}, "i"});
    c.noise_power = 0.1;
    CHECK_NOTHROW(c.validate());

    auto s = c.scaled(7.3);
    CHECK_THAT(s.desired.entries[1], WithinRel(14.6, 1e-15));
    CHECK_THAT(s.noise_power, WithinRel(0.73, 1e-15));

    auto r = c.with_rho_db(10);
    CHECK_THAT(r.noise_power, WithinRel(3.0 / (2 * 10.0), 1e-14));

    auto bad = c;
    bad.interferers[0].entries = {1};
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = c;
    bad.desired.entries[0] = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
    bad = c;
    bad.noise_power = -1;
    CHECK_THROWS_AS(bad.validate(), InvalidParameter);
}
