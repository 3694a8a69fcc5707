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

#include "macromrc/detail/wide_math.hpp"
#include "macromrc/precision.hpp"
#include "macromrc/ser_analytic.hpp"

#include <cmath>

namespace macromrc
{
    // The closed forms are evaluated at 50 digits and rounded, which keeps the cancellation near
    // beta = 0 and the boundary of the region away from the double result.
    double integral_I1(double alpha, double beta)
    {
        if (std::isnan(alpha) || std::isnan(beta))
            throw InvalidParameter("I1 argument is NaN");
        return static_cast<double>(detail::integral_i1r<real50>(real50(alpha), real50(beta)));
    }

    double integral_I2(double alpha, double beta)
    {
        if (std::isnan(alpha) || std::isnan(beta))
            throw InvalidParameter("I2 argument is NaN");
        return static_cast<double>(detail::integral_i2<real50>(real50(alpha), real50(beta)));
    }
}
