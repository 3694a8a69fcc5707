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

// Numerical-integration references for the closed forms. Only specfun primitives and the signed
// joint density are shared with the analytic code.

#ifndef MACROMRC_ORACLES_HPP
#define MACROMRC_ORACLES_HPP

#include "macromrc/gamma_dist.hpp"

#include <cstddef>
#include <string>

namespace macromrc::oracles
{
    enum class DomainTransform
    {
        // x = t / sqrt(kappa) followed by exp-sinh on [0, inf); kappa is the Gaussian decay rate
        gaussian_scaling,
        // Gauss-Kronrod with Boost's rational map of [a, inf) onto a finite interval
        rational_map,
    };

    struct QuadratureSpec
    {
        double relative_tolerance = 1e-10;
        double absolute_tolerance = 1e-14;
        unsigned max_subdivisions = 8;  // maximal bisection depth of adaptive Gauss-Kronrod
        DomainTransform transform = DomainTransform::rational_map;
    };

    // Pr(X^2 < r Y) by nested adaptive integration of joint_pdf over {x >= 0, y >= x^2 / r}.
    double cdf_via_quadrature(double r, const MixtureCoefficients &coeffs, const QuadratureSpec &spec = {});

    // Pr(X < r d) for X a sum of independent exponentials with the given means, by Fourier inversion
    // of the characteristic function.
    double scalar_cdf_via_quadrature(double r, const std::vector<double> &p1, double d, const QuadratureSpec &spec = {});

    enum class InnerCdf
    {
        closed_form, // gamma_cdf
        quadrature,  // cdf_via_quadrature / scalar_cdf_via_quadrature
    };

    // (a / sqrt(2 pi)) int_0^inf exp(-w^2/2) F(w^2/b) dw
    double w1_via_quadrature(double a, double b, const GammaModel &model, InnerCdf inner = InnerCdf::closed_form,
                             const QuadratureSpec &spec = {});

    // a sqrt(2/pi) int_0^inf exp(-w^2/2) Q(w) F(w^2/b) dw
    double w2_via_quadrature(double a, double b, const GammaModel &model, InnerCdf inner = InnerCdf::closed_form,
                             const QuadratureSpec &spec = {});

    enum class IntegralKind
    {
        I1, // divided by j: int x exp(-beta x^2) Q(x) erfi(alpha x) dx
        I2, // int x exp(beta x^2) Q(x) erfc(alpha x) dx
    };

    double integral_via_quadrature(IntegralKind kind, double alpha, double beta, const QuadratureSpec &spec = {});
}

#endif
