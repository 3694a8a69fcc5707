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

#ifndef MACROMRC_SER_ANALYTIC_HPP
#define MACROMRC_SER_ANALYTIC_HPP

#include "macromrc/gamma_dist.hpp"
#include "macromrc/modulation.hpp"
#include "macromrc/power_model.hpp"

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

namespace macromrc
{
    // int_0^inf x exp(-beta x^2) Q(x) erfi(alpha x) dx, i.e. I1 divided by the imaginary unit.
    // Needs alpha >= 0 and 1 + 2 beta > 2 alpha^2, else OutOfRegionError.
    double integral_I1(double alpha, double beta);

    // int_0^inf x exp(beta x^2) Q(x) erfc(alpha x) dx. Needs alpha >= 0 and 1 + 2 alpha^2 > 2 beta.
    double integral_I2(double alpha, double beta);

    // a E{Q(sqrt(b gamma))} and a E{Q^2(sqrt(b gamma))} for one magnitude profile.
    double w1(double a, double b, const GammaModel &model, const TierPolicy &policy = {});
    double w2(double a, double b, const GammaModel &model, const TierPolicy &policy = {});
    double w1(double a, double b, const SystemConfig &config, const InterfererMagnitudeProfile &profile,
              const AnalysisOptions &options = {});
    double w2(double a, double b, const SystemConfig &config, const InterfererMagnitudeProfile &profile,
              const AnalysisOptions &options = {});

    // sum over profiles of term(profile) * Pr(profile)
    double average_over_symbols(const std::function<double(const InterfererMagnitudeProfile &)> &term,
                                const Modulation &modulation, const SystemConfig &config, std::size_t cap = 100000);

    struct PairContribution
    {
        std::size_t i = 0, k = 0; // k == i on the constant-weight route
        double value = 0.0;
    };

    struct ProfileContribution
    {
        InterfererMagnitudeProfile profile;
        double value = 0.0; // conditional SER for this profile
        std::vector<PairContribution> terms;
        ModelKind kind = ModelKind::scalar;
        bool desired_perturbed = false;
        bool interference_perturbed = false;
        int digits = 16; // working precision that certified the value
    };

    struct SerResult
    {
        double value = 0.0;
        std::vector<ProfileContribution> breakdown;
        double weight_sum = 0.0;
        // |SER(eps) - SER(eps/2)| / SER(eps) when a perturbation was applied, else 0
        double perturbation_drift = 0.0;
        bool perturbed = false;
    };

    SerResult ser(const Modulation &modulation, const SystemConfig &config, const AnalysisOptions &options = {});

    // SER with sigma^2 = 0. Zero when there is no interference.
    double error_floor(const Modulation &modulation, const SystemConfig &config, const AnalysisOptions &options = {});

    std::vector<std::pair<double, double>> ser_curve(const Modulation &modulation, const ScenarioParams &scenario,
                                                     const std::vector<double> &rho_grid_db,
                                                     const AnalysisOptions &options = {});
    // Fixed powers, sigma^2 from each rho through Tr(P1) / (n_R 10^(rho/10)).
    std::vector<std::pair<double, double>> ser_curve(const Modulation &modulation, const SystemConfig &config,
                                                     const std::vector<double> &rho_grid_db,
                                                     const AnalysisOptions &options = {});
}

#endif
