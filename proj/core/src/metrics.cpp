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

#include "macromrc/metrics.hpp"
#include "macromrc/errors.hpp"
#include "macromrc/precision.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>

namespace macromrc
{
    MetricReport mean_sinr_metric(const SystemConfig &config)
    {
        config.validate();
        const auto &p1 = config.desired.entries;
        CompensatedSum<double> tr, tr2, den;
        for (std::size_t i = 0; i < p1.size(); ++i)
        {
            tr.add(p1[i]);
            tr2.add(p1[i] * p1[i]);
            den.add(config.noise_power * p1[i]);
            for (const auto &m : config.interferers)
                den.add(p1[i] * m.entries[i]);
        }
        MetricReport r;
        r.numerator = tr.value() * tr.value() + tr2.value();
        r.denominator = den.value();
        if (!(r.denominator > 0.0))
            throw UndefinedMetricError("mean SINR metric undefined: no interference and zero noise power");
        r.m_p_linear = r.numerator / r.denominator;
        r.m_p_db = 10.0 * std::log10(r.m_p_linear);
        return r;
    }

    MeanSinrEstimate mc_mean_sinr(const SystemConfig &config, std::uint64_t n_samples, std::uint64_t seed,
                                  const SimulationOptions &options)
    {
        config.validate();
        if (n_samples == 0)
            throw InvalidParameter("n_samples must be at least 1");
        const std::size_t S = std::max<std::size_t>(1, options.substreams);
        std::vector<double> sum(S, 0.0), sum2(S, 0.0);

        detail::for_each_substream(n_samples, S, options.threads,
                                   [&](std::size_t s, std::uint64_t count)
                                   {
                                       Rng rng(seed, s);
                                       CompensatedSum<double> a, b;
                                       for (std::uint64_t t = 0; t < count; ++t)
                                       {
                                           const auto ch = generate_channel(config, rng);
                                           const auto &h1 = ch.h_columns.front();
                                           double X = 0.0;
                                           for (const auto &v : h1)
                                               X += std::norm(v);
                                           double den = config.noise_power * X;
                                           for (std::size_t k = 1; k < ch.h_columns.size(); ++k)
                                           {
                                               std::complex<double> ip = 0.0;
                                               for (std::size_t i = 0; i < h1.size(); ++i)
                                                   ip += std::conj(h1[i]) * ch.h_columns[k][i];
                                               den += std::norm(ip);
                                           }
                                           const double g = den > 0.0 ? X * X / den : std::numeric_limits<double>::infinity();
                                           a.add(g);
                                           b.add(g * g);
                                       }
                                       sum[s] = a.value();
                                       sum2[s] = b.value();
                                   });

        CompensatedSum<double> a, b;
        for (std::size_t s = 0; s < S; ++s)
        {
            a.add(sum[s]);
            b.add(sum2[s]);
        }
        MeanSinrEstimate e;
        e.n_samples = n_samples;
        e.seed = seed;
        const double N = double(n_samples);
        e.mean = a.value() / N;
        const double var = n_samples > 1 ? std::max(0.0, (b.value() - N * e.mean * e.mean) / (N - 1.0)) : 0.0;
        e.std_err = std::sqrt(var / N);
        return e;
    }
}
