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

#ifndef MACROMRC_SPECFUN_HPP
#define MACROMRC_SPECFUN_HPP

namespace macromrc
{
    // value = mantissa * exp(log_scale)
    struct ScaledExpProduct
    {
        double log_scale = 0.0;
        double mantissa = 0.0;

        double value() const;
        ScaledExpProduct operator*(const ScaledExpProduct &o) const { return {log_scale + o.log_scale, mantissa * o.mantissa}; }
    };

    // Gaussian tail probability, Q(x) = 0.5 erfc(x / sqrt 2)
    double gaussian_q(double x);

    double erf(double x);
    double erfc(double x);

    // Scaled complementary error function exp(x^2) erfc(x)
    double erfcx(double x);

    // Dawson integral exp(-x^2) int_0^x exp(t^2) dt
    double dawson(double x);

    // Imaginary error function erf(jx)/j. Throws OutOfRegionError once exp(x^2) overflows.
    double erfi(double x);

    // erfi(x) = exp(x^2) * (2/sqrt(pi)) dawson(x), never overflows
    ScaledExpProduct erfi_scaled(double x);

    // erfc(x) = exp(-x^2) * erfcx(x)
    ScaledExpProduct erfc_scaled(double x);

    // exp(x^2) with the rounding error of x*x folded back in
    double exp_square(double x);
    // exp(-x^2), same treatment
    double exp_neg_square(double x);
}

#endif
