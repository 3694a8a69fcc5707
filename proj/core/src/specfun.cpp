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

#include "macromrc/specfun.hpp"
#include "macromrc/errors.hpp"

#include <cmath>
#include <limits>

namespace macromrc
{
    namespace
    {
        constexpr double two_over_sqrt_pi = 1.1283791670955125738961589;
        constexpr double inv_sqrt_pi = 0.5641895835477562869480795;
        constexpr double inv_sqrt2 = 0.7071067811865475244008444;
    }

    double ScaledExpProduct::value() const
    {
        if (mantissa == 0.0)
            return 0.0;
        return mantissa * std::exp(log_scale);
    }

    double exp_square(double x)
    {
        const double hi = x * x;
        const double lo = std::fma(x, x, -hi);
        return std::exp(hi) * (1.0 + lo);
    }

    double exp_neg_square(double x)
    {
        const double hi = x * x;
        const double lo = std::fma(x, x, -hi);
        return std::exp(-hi) * (1.0 - lo);
    }

    double gaussian_q(double x)
    {
        return 0.5 * std::erfc(x * inv_sqrt2);
    }

    double erf(double x) { return std::erf(x); }
    double erfc(double x) { return std::erfc(x); }

    double erfcx(double x)
    {
        if (std::isnan(x))
            return x;
        if (x < 0.0)
        {
            if (x < -26.6)
                return std::numeric_limits<double>::infinity();
            return 2.0 * exp_square(x) - erfcx(-x);
        }
        if (x < 26.0)
            return exp_square(x) * std::erfc(x);
        if (x > 1e8)
            return inv_sqrt_pi / x;

        // 1/(x sqrt pi) * sum (-1)^n (2n-1)!! / (2x^2)^n
        const double t = 1.0 / (2.0 * x * x);
        double term = 1.0, s = 1.0;
        for (int n = 1; n < 30; ++n)
        {
            term *= -(2.0 * n - 1.0) * t;
            s += term;
            if (std::abs(term) < 1e-17 * s)
                break;
        }
        return inv_sqrt_pi / x * s;
    }

    double dawson(double x)
    {
        if (std::isnan(x))
            return x;
        const double ax = std::abs(x);
        double r;
        if (ax < 0.2)
        {
            // sum (-1)^n 2^n x^(2n+1) / (2n+1)!!
            const double x2 = ax * ax;
            double term = ax, s = ax;
            for (int n = 1; n < 40; ++n)
            {
                term *= -2.0 * x2 / (2.0 * n + 1.0);
                s += term;
                if (std::abs(term) < 1e-18 * s)
                    break;
            }
            r = s;
        }
        else if (ax <= 7.0)
        {
            // exp(-x^2) sum x^(2n+1) / (n! (2n+1)), all terms positive
            const double x2 = ax * ax;
            double t = ax, s = ax;
            for (int n = 1; n < 400; ++n)
            {
                t *= x2 / n;
                const double add = t / (2.0 * n + 1.0);
                s += add;
                if (add < 1e-18 * s)
                    break;
            }
            r = s * exp_neg_square(ax);
        }
        else
        {
            // 1/(2x) sum (2n-1)!! / (2x^2)^n
            const double t = 1.0 / (2.0 * ax * ax);
            double term = 1.0, s = 1.0;
            for (int n = 1; n < 60; ++n)
            {
                const double next = term * (2.0 * n - 1.0) * t;
                if (next > term)
                    break;
                term = next;
                s += term;
                if (term < 1e-18 * s)
                    break;
            }
            r = s / (2.0 * ax);
        }
        return x < 0.0 ? -r : r;
    }

    ScaledExpProduct erfi_scaled(double x)
    {
        return {x * x, two_over_sqrt_pi * dawson(x)};
    }

    ScaledExpProduct erfc_scaled(double x)
    {
        return {-x * x, erfcx(x)};
    }

    double erfi(double x)
    {
        if (x == 0.0)
            return x;
        if (std::abs(x) > 26.6)
            throw OutOfRegionError("erfi overflows for |x| > 26.6; use erfi_scaled");
        return two_over_sqrt_pi * exp_square(x) * dawson(x);
    }
}
