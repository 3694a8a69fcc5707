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

#ifndef MACROMRC_METRICS_HPP
#define MACROMRC_METRICS_HPP

#include "macromrc/mcsim.hpp"
#include "macromrc/power_model.hpp"

#include <cstddef>
#include <cstdint>

namespace macromrc
{
    struct MetricReport
    {
        double m_p_linear = 0.0;
        double m_p_db = 0.0;
        double numerator = 0.0;   // Tr(P1)^2 + Tr(P1^2)
        double denominator = 0.0; // Tr(sum_k P1 P_k + sigma^2 P1)
    };

    // Delta-method mean SINR of the combiner. Throws UndefinedMetricError for a zero denominator.
    MetricReport mean_sinr_metric(const SystemConfig &config);

    struct MeanSinrEstimate
    {
        double mean = 0.0;
        double std_err = 0.0;
        std::uint64_t n_samples = 0;
        std::uint64_t seed = 0;
    };

    // Sample mean of (h1^H h1)^2 / (h1^H (sum_k h_k h_k^H + sigma^2 I) h1).
    MeanSinrEstimate mc_mean_sinr(const SystemConfig &config, std::uint64_t n_samples, std::uint64_t seed,
                                  const SimulationOptions &options = {});
}

#endif
