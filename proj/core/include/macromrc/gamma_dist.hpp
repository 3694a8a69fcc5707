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

#ifndef MACROMRC_GAMMA_DIST_HPP
#define MACROMRC_GAMMA_DIST_HPP

#include "macromrc/power_model.hpp"
#include "macromrc/precision.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace macromrc
{
    // Squared interferer symbol magnitudes |s_u|^2, one per interferer, and the probability of the profile.
    struct InterfererMagnitudeProfile
    {
        std::vector<double> magnitudes;
        double probability = 1.0;
    };

    // All interferers at unit magnitude (constant-modulus constellations).
    InterfererMagnitudeProfile unit_profile(const SystemConfig &config);

    struct PairCoefficients
    {
        std::size_t i = 0, k = 0;
        double xi = 0, beta = 0, omega = 0, alpha = 0;
        double upsilon = 0, nu = 0;
    };

    // gamma = X^2 / Y with X = sum x_i, Y = sum d_i x_i and x_i ~ Exp(mean p1[i]).
    struct MixtureCoefficients
    {
        std::vector<double> p1; // desired powers P_i1
        std::vector<double> d;  // interference-plus-noise weights, Q_i = d_i P_i1
        std::vector<double> q;
        std::vector<PairCoefficients> pairs;
        double condition = 1.0; // first-order relative error amplification of the coefficients

        std::size_t n_r() const { return p1.size(); }
    };

    // Coefficients for a given desired power vector and weight vector d.
    // Throws CoincidentPowerError for equal P_i1 or equal d_i, NearSingularError when a
    // partial-fraction denominator falls below singular_threshold relative to its operands.
    MixtureCoefficients mixture_coefficients(const std::vector<double> &p1, const std::vector<double> &d,
                                             double singular_threshold = 1e-9);

    MixtureCoefficients mixture_coefficients(const SystemConfig &config, const InterfererMagnitudeProfile &profile,
                                             double singular_threshold = 1e-9);

    // Signed mixture density of (X, Y); 0 outside the positive quadrant.
    double joint_pdf(double x, double y, const MixtureCoefficients &coeffs);

    // Pr(gamma <= r), evaluated through the precision ladder and clamped to [0, 1].
    double gamma_cdf(double r, const MixtureCoefficients &coeffs, const TierPolicy &policy = {});

    struct AnalysisOptions
    {
        // Relative offset used to separate coincident powers. Unset: coincidences are errors.
        std::optional<double> perturb_epsilon_rel;
        double singular_threshold = 1e-9;
        // Recompute at epsilon/2 whenever a perturbation was applied; the relative change must stay below this.
        bool check_stability = true;
        double stability_tolerance = 1e-4;
        TierPolicy tiers;
        // Maximal number of interferer magnitude profiles averaged over.
        std::size_t profile_cap = 100000;
    };

    enum class ModelKind
    {
        mixture,   // weights d_i differ across antennas
        scalar,    // d_i all equal: gamma = X / d
        unbounded, // no interference and no noise: gamma = +inf
    };

    // Distribution of gamma for one interferer magnitude profile, after any perturbation.
    struct GammaModel
    {
        ModelKind kind = ModelKind::scalar;
        std::vector<double> p1;
        std::vector<double> d;
        std::optional<MixtureCoefficients> mixture;
        bool desired_perturbed = false;
        bool interference_perturbed = false;
        double condition = 1.0;
    };

    GammaModel build_gamma_model(const SystemConfig &config, const InterfererMagnitudeProfile &profile,
                                 const AnalysisOptions &options = {});

    // Build from raw vectors (d = interference-plus-noise weight per antenna).
    GammaModel build_gamma_model(std::vector<double> p1, std::vector<double> d, const AnalysisOptions &options = {});

    double gamma_cdf(double r, const GammaModel &model, const TierPolicy &policy = {});

    // Pr(gamma < threshold) for one magnitude profile. threshold_in_db maps 10 log10.
    double outage_probability(const SystemConfig &config, const InterfererMagnitudeProfile &profile, double threshold,
                              bool threshold_in_db = false, const AnalysisOptions &options = {});
}

#endif
