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

#ifndef MACROMRC_MODULATION_HPP
#define MACROMRC_MODULATION_HPP

#include "macromrc/gamma_dist.hpp"
#include "macromrc/power_model.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace macromrc
{
    enum class ModulationKind
    {
        bpsk,
        qpsk,
        square_qam,
    };

    // SER = sum over terms of  +a E{Q(sqrt(b gamma))}  (squared == false)
    //                     or   -a E{Q^2(sqrt(b gamma))} (squared == true)
    struct SerTerm
    {
        double a = 0.0;
        double b = 0.0;
        bool squared = false;
    };

    struct MagnitudeLevel
    {
        double magnitude = 1.0; // |s|^2
        double probability = 1.0;
    };

    struct Modulation
    {
        ModulationKind kind = ModulationKind::bpsk;
        unsigned order = 2;
        std::string name = "bpsk";
        std::vector<SerTerm> ser_terms;
        std::vector<MagnitudeLevel> magnitude_levels;

        // Unit average energy, Gray/axis-aligned grid for square QAM.
        std::vector<std::complex<double>> constellation() const;
        bool constant_modulus() const { return magnitude_levels.size() == 1; }
    };

    Modulation bpsk();
    Modulation qpsk();
    // M = 4, 16, 64, ... (perfect square, M >= 4). M = 4 is equivalent to qpsk().
    Modulation square_qam(unsigned m);
    // "bpsk", "qpsk", "16qam", "qam64", "64-qam", ...
    Modulation modulation_from_name(const std::string &name);

    // Number of distinct interferer magnitude profiles. Identical interferer matrices are merged into
    // multisets, so only the counts per magnitude level matter within such a group.
    double profile_count(const Modulation &mod, const SystemConfig &config);

    // Throws CombinatorialBlowupError when profile_count exceeds cap.
    std::vector<InterfererMagnitudeProfile> enumerate_profiles(const Modulation &mod, const SystemConfig &config,
                                                               std::size_t cap = 100000);
}

#endif
