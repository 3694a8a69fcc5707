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

#ifndef MACROMRC_POWER_MODEL_HPP
#define MACROMRC_POWER_MODEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace macromrc
{
    // Diagonal of the average link-power matrix of one source, one entry per receive antenna.
    struct PowerMatrix
    {
        std::vector<double> entries;
        std::string source_id;

        std::size_t n_r() const { return entries.size(); }
        double trace() const;
    };

    struct Normalization
    {
        std::string trace_convention = "desired trace = n_R";
        double rho_db = 0.0;
        double varsigma = 1.0;
    };

    struct SystemConfig
    {
        PowerMatrix desired;
        std::vector<PowerMatrix> interferers;
        double noise_power = 0.0; // sigma^2, linear
        std::optional<Normalization> normalization;

        std::size_t n_r() const { return desired.n_r(); }

        // Throws InvalidParameter on shape mismatch, negative entries, non-positive desired powers
        // or a negative / non-finite noise power.
        void validate() const;

        // Same system with every matrix and sigma^2 multiplied by c.
        SystemConfig scaled(double c) const;

        // Same powers, sigma^2 = Tr(P1) / (n_R 10^(rho_db/10)); +inf gives sigma^2 = 0.
        SystemConfig with_rho_db(double rho_db) const;
    };

    struct ScenarioParams
    {
        double rho_db = 20.0;
        double varsigma = 1.0;
        double alpha_desired = 1.0;
        double alpha_interferer = 1.0;
        std::size_t n_r = 3;
        std::optional<double> trace_norm; // defaults to n_r

        // Co-located antennas per site. The exponential profile runs over n_r / antennas_per_site
        // sites and each site's power is split evenly over its antennas.
        std::size_t antennas_per_site = 1;
    };

    PowerMatrix exponential_profile(double trace, double alpha, std::size_t n_r);

    SystemConfig scenario_to_config(const ScenarioParams &params);

    // Entrywise sum_k magnitudes[k] * interferers[k]. An empty list yields the zero matrix of length n_r.
    PowerMatrix aggregate_interferers(const std::vector<PowerMatrix> &interferers, const std::vector<double> &magnitudes,
                                      std::size_t n_r);

    // Groups of (relatively) equal values with more than one member, in order of first appearance.
    std::vector<std::vector<std::size_t>> coincident_groups(const std::vector<double> &values, double rel_tol = 1e-12);

    // Each group of m equal desired powers p becomes p, p(1+eps), ..., p(1+(m-1)eps).
    SystemConfig perturb_coincident_powers(const SystemConfig &config, double epsilon_rel = 1e-5);

    // Built-in scenarios S1..S20 (1-based index). S16..S20 use six antennas on three sites.
    ScenarioParams reference_scenario(int index, double rho_db);
    inline constexpr int reference_scenario_count = 20;
}

#endif
