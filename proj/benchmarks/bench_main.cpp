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


#include "macromrc/gamma_dist.hpp"
#include "macromrc/mcsim.hpp"
#include "macromrc/ser_analytic.hpp"
#include "macromrc/specfun.hpp"

#include <benchmark/benchmark.h>

#include <limits>

using namespace macromrc;

namespace
{
    AnalysisOptions perturbed()
    {
        AnalysisOptions o;
        o.perturb_epsilon_rel = 1e-5;
        return o;
    }

    void BM_erfcx(benchmark::State &st)
    {
        double x = 0.1;
        for (auto _ : st)
        {
            benchmark::DoNotOptimize(erfcx(x));
            x = x < 50 ? x * 1.01 : 0.1;
        }
    }
    BENCHMARK(BM_erfcx);

    void BM_gamma_cdf(benchmark::State &st)
    {
        const auto cfg = scenario_to_config(reference_scenario(int(st.range(0)), 10));
        const auto m = build_gamma_model(cfg, unit_profile(cfg), perturbed());
        double r = 0.01;
        for (auto _ : st)
        {
            benchmark::DoNotOptimize(gamma_cdf(r, m));
            r = r < 1e4 ? r * 1.3 : 0.01;
        }
    }
    BENCHMARK(BM_gamma_cdf)->Arg(1)->Arg(8)->Arg(16);

    void BM_integral_I2(benchmark::State &st)
    {
        for (auto _ : st)
            benchmark::DoNotOptimize(integral_I2(0.8, 0.6));
    }
    BENCHMARK(BM_integral_I2);

    void BM_error_floor(benchmark::State &st)
    {
        const int s = int(st.range(0));
        const auto cfg = scenario_to_config(reference_scenario(s, std::numeric_limits<double>::infinity()));
        const auto mod = s <= 10 ? bpsk() : qpsk();
        for (auto _ : st)
            benchmark::DoNotOptimize(error_floor(mod, cfg, perturbed()));
    }
    BENCHMARK(BM_error_floor)->Arg(1)->Arg(8)->Arg(13)->Arg(18)->Unit(benchmark::kMillisecond);

    void BM_simulate_ser(benchmark::State &st)
    {
        const auto cfg = scenario_to_config(reference_scenario(8, 10));
        SimulationOptions o;
        o.threads = 1;
        std::uint64_t seed = 1;
        for (auto _ : st)
            benchmark::DoNotOptimize(simulate_ser(cfg, qpsk(), 100000, seed++, o).n_errors);
        st.SetItemsProcessed(st.iterations() * 100000);
    }
    BENCHMARK(BM_simulate_ser)->Unit(benchmark::kMillisecond);
}
