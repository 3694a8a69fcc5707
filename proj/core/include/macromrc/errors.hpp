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

#ifndef MACROMRC_ERRORS_HPP
#define MACROMRC_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace macromrc
{
    class Error : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    class InvalidParameter : public Error
    {
    public:
        using Error::Error;
    };

    // Two antennas carry the same power for the named quantity ("desired" or "interference").
    // The closed forms need distinct values; see perturb_coincident_powers.
    class CoincidentPowerError : public Error
    {
    public:
        CoincidentPowerError(std::string quantity, std::size_t i, std::size_t k)
            : Error(quantity + " powers of antennas " + std::to_string(i + 1) + " and " + std::to_string(k + 1) +
                    " coincide; enable perturbation to evaluate this configuration"),
              quantity(std::move(quantity)), antenna_i(i), antenna_k(k) {}
        std::string quantity;
        std::size_t antenna_i, antenna_k;
    };

    // A partial-fraction denominator of the mixture expansion is (numerically) zero.
    // k == l flags the pair denominator itself.
    class NearSingularError : public Error
    {
    public:
        NearSingularError(std::size_t i, std::size_t k, std::size_t l)
            : Error("mixture expansion is near-singular at antenna triple (" + std::to_string(i + 1) + "," +
                    std::to_string(k + 1) + "," + std::to_string(l + 1) + "); enable perturbation"),
              i(i), k(k), l(l) {}
        std::size_t i, k, l;
    };

    // Integral argument outside its region of convergence.
    class OutOfRegionError : public Error
    {
    public:
        using Error::Error;
    };

    // Requested accuracy could not be certified, even at the widest working precision.
    class AccuracyError : public Error
    {
    public:
        using Error::Error;
    };

    class UndefinedMetricError : public Error
    {
    public:
        using Error::Error;
    };

    class CombinatorialBlowupError : public Error
    {
    public:
        using Error::Error;
    };

    class DegenerateChannelError : public Error
    {
    public:
        using Error::Error;
    };

    // Quadrature reference did not converge. Signals a test-infrastructure problem.
    class OracleFailure : public Error
    {
    public:
        using Error::Error;
    };
}

#endif
