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
#include "macromrc/mcsim.hpp"
#include "macromrc/ser_analytic.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

using namespace macromrc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("channel generation", "[mcsim]")
{
    SystemConfig c;
    c.desired.entries = {2, 1e-3};
    c.interferers = {{{0, 1}, "i"}};
    c.noise_power = 0.5;
    Rng rng(3);
    double acc = 0.0, accn = 0.0;
    const int n = 1000000;
    for (int t = 0; t < n; ++t)
    {
        const auto ch = generate_channel(c, rng);
        REQUIRE(ch.h_columns.size() == 2);
        CHECK(ch.h_columns[1][0] == std::complex<double>(0.0));
        acc += std::norm(ch.h_columns[0][0]);
        accn += std::norm(ch.noise[1]);
    }
    CHECK(acc / n > 1.99);
    CHECK(acc / n < 2.01);
    CHECK_THAT(accn / n, WithinAbs(0.5, 0.005));

    Rng a(17, 2), b(17, 2), d(17, 3);
    const auto x = generate_channel(c, a), y = generate_channel(c, b), z = generate_channel(c, d);
    CHECK(x.h_columns[0] == y.h_columns[0]);
    CHECK(x.h_columns[0] != z.h_columns[0]);
}

TEST_CASE("MRC combining", "[mcsim]")
{
    const cvec h{{1, 2}, {-0.5, 0.25}, {3, -1}};
    cvec r = h;
    CHECK_THAT(std::abs(mrc_combine(h, r) - std::complex<double>(1.0)), WithinAbs(0.0, 1e-15));
    const std::complex<double> s(0.3, -0.7);
    for (auto &v : r)
        v *= s;
    CHECK_THAT(std::abs(mrc_combine(h, r) - s), WithinAbs(0.0, 1e-15));

    // tiny and huge entries mixed
    const cvec g{{1e-150, 0}, {1e150, 0}};
    CHECK_THAT(mrc_combine(g, g).real(), WithinRel(1.0, 1e-15));

    const cvec r1{{0.1, 0.2}, {-1, 0}, {0.5, 0.5}}, r2{{2, -1}, {0.3, 0.3}, {0, 1}};
    cvec r12(3);
    for (int i = 0; i < 3; ++i)
        r12[i] = r1[i] + r2[i];
    CHECK_THAT(std::abs(mrc_combine(h, r12) - mrc_combine(h, r1) - mrc_combine(h, r2)), WithinAbs(0.0, 1e-14));

    // long double re-evaluation on random instances
    Rng rng(8);
    for (int t = 0; t < 100; ++t)
    {
        cvec a(4), b(4);
        for (int i = 0; i < 4; ++i)
        {
            a[i] = {rng.normal(), rng.normal()};
            b[i] = {rng.normal(), rng.normal()};
        }
        std::complex<long double> num = 0.0L;
        long double den = 0.0L;
        for (int i = 0; i < 4; ++i)
        {
            const std::complex<long double> ai(a[i].real(), a[i].imag()), bi(b[i].real(), b[i].imag());
            num += std::conj(ai) * bi;
            den += std::norm(ai);
        }
        const std::complex<long double> ref = num / den;
        const auto got = mrc_combine(a, b);
        CHECK(double(std::abs(std::complex<long double>(got.real(), got.imag()) - ref)) <=
              1e-12 * double(std::abs(ref)) + 1e-15);
    }

    CHECK_THROWS_AS(mrc_combine(cvec(3, 0.0), r), DegenerateChannelError);
}

TEST_CASE("noise-only link at very high SNR makes no errors", "[mcsim]")
{
    SystemConfig c;
    c.desired.entries = {1, 1, 1};
    c.noise_power = 1e-12;
    const auto e = simulate_ser(c, bpsk(), 100000, 4);
    CHECK(e.n_errors == 0);
    CHECK(e.ser == 0.0);
    CHECK(simulate_ser(c, qpsk(), 100000, 4).n_errors == 0);
}

TEST_CASE("simulation is independent of the thread count", "[mcsim]")
{
    const auto c = scenario_to_config(reference_scenario(8, 10));
    SimulationOptions one, three;
    one.threads = 1;
    three.threads = 3;
    const auto a = simulate_ser(c, qpsk(), 200000, 11, one);
    const auto b = simulate_ser(c, qpsk(), 200000, 11, three);
    CHECK(a.n_errors == b.n_errors);
    CHECK(a.ser == b.ser);
    CHECK(a.substreams == 64);
    const auto d = simulate_ser(c, qpsk(), 200000, 12, one);
    CHECK(a.n_errors != d.n_errors);
}

TEST_CASE("z-scores against the analytic SER have unit spread", "[mcsim][slow]")
{
    const auto c = scenario_to_config(reference_scenario(1, 10));
    const double p = ser(bpsk(), c).value;
    double s2 = 0.0;
    const int runs = 50;
    for (int k = 0; k < runs; ++k)
    {
        const auto e = simulate_ser(c, bpsk(), 20000, 1000 + k);
        const double z = (e.ser - p) / std::sqrt(p * (1 - p) / 20000.0);
        s2 += z * z;
    }
    CHECK(s2 / runs >= 0.6);
    CHECK(s2 / runs <= 1.5);
}

TEST_CASE("simulated error floor of S1", "[mcsim][slow]")
{
    const auto c = scenario_to_config(reference_scenario(1, 40));
    const auto e = simulate_ser(c, bpsk(), 10000000, 40);
    CHECK(std::abs(e.ser - 0.136334) <= 3 * e.std_err);
    CHECK(e.n_symbols == 10000000);
    CHECK_THAT(e.std_err, WithinRel(std::sqrt(e.ser * (1 - e.ser) / 1e7), 1e-12));
}

TEST_CASE("16-QAM simulation matches the analytic SER", "[mcsim][slow]")
{
    const auto c = scenario_to_config(reference_scenario(12, 20));
    const auto m = square_qam(16);
    const double p = ser(m, c).value;
    const auto e = simulate_ser(c, m, 1000000, 21);
    CHECK(std::abs(e.ser - p) <= 4 * e.std_err);
}

TEST_CASE("sampled gamma", "[mcsim]")
{
    SystemConfig c;
    c.desired.entries = {1, 2};
    c.interferers = {{{2, 1}, "i"}};
    const auto prof = unit_profile(c);
    CHECK(sample_gamma(c, prof, 0, 1).empty());
    auto g = sample_gamma(c, prof, 400001, 2);
    std::nth_element(g.begin(), g.begin() + 200000, g.end());
    const double med = g[200000];
    const auto model = build_gamma_model(c, prof);
    // 3 binomial standard errors at p = 1/2
    CHECK_THAT(gamma_cdf(med, model), WithinAbs(0.5, 3 * 0.5 / std::sqrt(400001.0)));
}

TEST_CASE("microdiversity gamma follows the hypoexponential law", "[mcsim]")
{
    SystemConfig c;
    c.desired.entries = {0.5, 1.0, 2.0};
    c.interferers = {{{0.3, 0.3, 0.3}, "i"}};
    const auto prof = unit_profile(c);
    const auto model = build_gamma_model(c, prof);
    REQUIRE(model.kind == ModelKind::scalar);
    auto g = sample_gamma(c, prof, 100000, 3);
    std::sort(g.begin(), g.end());
    double ks = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i)
    {
        const double F = gamma_cdf(g[i], model);
        ks = std::max({ks, std::abs(F - double(i) / g.size()), std::abs(F - double(i + 1) / g.size())});
    }
    // Kolmogorov distribution, 0.1% level
    CHECK(ks * std::sqrt(double(g.size())) < 1.95);
}
