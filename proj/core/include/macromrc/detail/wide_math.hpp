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

// Precision-generic special functions and the two Gaussian integrals, instantiated for double and
// the multiprecision tiers. Not part of the stable API.

#ifndef MACROMRC_DETAIL_WIDE_MATH_HPP
#define MACROMRC_DETAIL_WIDE_MATH_HPP

#include "macromrc/errors.hpp"
#include "macromrc/specfun.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/atanh.hpp>
#include <boost/math/special_functions/expm1.hpp>
#include <boost/math/special_functions/log1p.hpp>

#include <cmath>
#include <limits>
#include <type_traits>

namespace macromrc::detail
{
    template <class T>
    T pi() { return boost::math::constants::pi<T>(); }

    template <class T>
    T eps() { return std::numeric_limits<T>::epsilon(); }

    // natural log of 10^digits10
    template <class T>
    T digits_ln() { return T(std::numeric_limits<T>::digits10) * boost::math::constants::ln_ten<T>(); }

    template <class T>
    T expm1(const T &x)
    {
        if constexpr (std::is_same_v<T, double>)
            return std::expm1(x);
        else
            return boost::math::expm1(x);
    }

    template <class T>
    T atanh(const T &x)
    {
        if constexpr (std::is_same_v<T, double>)
            return std::atanh(x);
        else
            return boost::math::atanh(x);
    }

    template <class T>
    T erfcx(const T &z)
    {
        if constexpr (std::is_same_v<T, double>)
            return macromrc::erfcx(z);
        else
        {
            using std::exp;
            using std::sqrt;
            if (z < 0)
                return 2 * exp(z * z) - erfcx(T(-z));
            const T z2 = z * z;
            if (z2 < digits_ln<T>() / 4)
            {
                // exp(z^2) - (2/sqrt pi) sum 2^n z^(2n+1) / (2n+1)!!
                T term = z, s = z;
                for (int n = 1; n < 100000; ++n)
                {
                    term *= 2 * z2 / (2 * n + 1);
                    s += term;
                    if (term < eps<T>() * s)
                        break;
                }
                return exp(z2) - 2 / sqrt(pi<T>()) * s;
            }
            // Lentz: f = z + (1/2)/(z + 1/(z + (3/2)/(z + ...)))
            const T tiny = std::numeric_limits<T>::min() * 1e10;
            T f = z, C = z, D = 0;
            for (int j = 1; j < 200000; ++j)
            {
                const T a = T(j) / 2;
                D = z + a * D;
                if (D == 0)
                    D = tiny;
                C = z + a / C;
                if (C == 0)
                    C = tiny;
                D = 1 / D;
                const T delta = C * D;
                f *= delta;
                if (abs(delta - 1) < eps<T>())
                    break;
            }
            return 1 / (sqrt(pi<T>()) * f);
        }
    }

    template <class T>
    T dawson(const T &x)
    {
        if constexpr (std::is_same_v<T, double>)
            return macromrc::dawson(x);
        else
        {
            using std::abs;
            using std::exp;
            const T ax = abs(x);
            const T x2 = ax * ax;
            T r;
            if (x2 > digits_ln<T>() + 4)
            {
                // asymptotic, smallest term ~ exp(-x^2)
                const T t = 1 / (2 * x2);
                T term = 1, s = 1;
                for (int n = 1; n < 100000; ++n)
                {
                    const T next = term * (2 * n - 1) * t;
                    if (next > term)
                        break;
                    term = next;
                    s += term;
                    if (term < eps<T>() * s)
                        break;
                }
                r = s / (2 * ax);
            }
            else if (ax < T(0.2))
            {
                T term = ax, s = ax;
                for (int n = 1; n < 100000; ++n)
                {
                    term *= -2 * x2 / (2 * n + 1);
                    s += term;
                    if (abs(term) < eps<T>() * s)
                        break;
                }
                r = s;
            }
            else
            {
                T t = ax, s = ax;
                for (int n = 1; n < 100000; ++n)
                {
                    t *= x2 / n;
                    const T add = t / (2 * n + 1);
                    s += add;
                    if (add < eps<T>() * s)
                        break;
                }
                r = s * exp(-x2);
            }
            return x < 0 ? T(-r) : r;
        }
    }

    // h(z) = int_0^1 ds / (1 + z s^2), z > -1
    template <class T>
    T hfun(const T &z)
    {
        using std::abs;
        using std::atan;
        using std::sqrt;
        if (abs(z) < T(0.1))
        {
            T p = 1, s = 1;
            for (int n = 1; n < 100000; ++n)
            {
                p *= -z;
                const T add = p / (2 * n + 1);
                s += add;
                if (abs(add) < eps<T>() * abs(s))
                    break;
            }
            return s;
        }
        if (z > 0)
        {
            const T r = sqrt(z);
            return atan(r) / r;
        }
        const T r = sqrt(T(-z));
        return atanh(r) / r;
    }

    template <class T, class F>
    T integrate_unit(F &&f, const T &a, const T &b, bool smooth)
    {
        if (smooth)
            return boost::math::quadrature::gauss<T, 64>::integrate(f, a, b);
        using std::sqrt;
        boost::math::quadrature::tanh_sinh<T> ts;
        return ts.integrate(f, a, b, T(sqrt(eps<T>()) * T(1e-3)));
    }

    // Below this |beta| the integrals switch to their beta-free finite-interval forms. The closed
    // forms lose about eps/|beta| to cancellation; 64-point Gauss-Legendre on the finite forms
    // converges faster the smaller |beta| is.
    template <class T>
    T small_beta_threshold()
    {
        return std::numeric_limits<T>::digits10 > 110 ? T(1e-4) : T(1e-2);
    }

    // I1(alpha, beta) / j = int_0^inf x exp(-beta x^2) Q(x) erfi(alpha x) dx, alpha >= 0, 1 + 2 beta > 2 alpha^2
    template <class T>
    T integral_i1r(const T &alpha, const T &beta)
    {
        using std::abs;
        using std::sqrt;
        using std::pow;
        if (alpha < 0)
            throw OutOfRegionError("I1 requires alpha >= 0");
        const T gap = 1 + 2 * beta - 2 * alpha * alpha;
        if (!(gap > 0))
            throw OutOfRegionError("I1 requires 1 + 2 beta > 2 alpha^2");
        if (alpha == 0)
            return T(0);
        const T a2 = alpha * alpha;
        const T pre = sqrt(T(2)) * alpha / (2 * pi<T>());
        if (abs(beta) < small_beta_threshold<T>())
        {
            // beta-free form, no 1/beta cancellation
            auto f = [&](const T &s)
            {
                const T s2 = s * s;
                return 2 * (1 - s2) / ((1 + 2 * (beta - a2) * s2) * (1 + 2 * beta - 2 * a2 * s2));
            };
            // nearest real pole of the integrand beyond s = 1 decides whether 64 nodes suffice
            T pole = (1 + 2 * beta) / (2 * a2);
            if (a2 > beta)
                pole = std::min<T>(pole, 1 / (2 * (a2 - beta)));
            const T s_star = sqrt(pole);
            const T rho = s_star + sqrt(T(s_star * s_star - 1));
            using std::log;
            const bool smooth = 128 * log(rho) > -log(eps<T>()) + 5;
            return pre * integrate_unit<T>(f, T(0), T(1), smooth);
        }
        const T opb = 1 + 2 * beta;
        return pre / beta * (hfun<T>(2 * (beta - a2)) - hfun<T>(-2 * a2 / opb) / opb);
    }

    // I2(alpha, beta) = int_0^inf x exp(beta x^2) Q(x) erfc(alpha x) dx, alpha >= 0, 1 + 2 alpha^2 > 2 beta
    template <class T>
    T integral_i2(const T &alpha, const T &beta)
    {
        using std::abs;
        using std::atan;
        using std::cos;
        using std::sin;
        using std::sqrt;
        if (alpha < 0)
            throw OutOfRegionError("I2 requires alpha >= 0");
        const T a2 = alpha * alpha;
        if (!(1 + 2 * a2 - 2 * beta > 0))
            throw OutOfRegionError("I2 requires 1 + 2 alpha^2 > 2 beta");
        if (abs(beta) < small_beta_threshold<T>())
        {
            const T phi = atan(sqrt(T(2)) * alpha);
            auto f1 = [&](const T &t)
            {
                const T s2 = sin(t) * sin(t);
                return s2 / (a2 - beta * s2);
            };
            auto f2 = [&](const T &t)
            {
                const T c2 = cos(t) * cos(t);
                return 2 * c2 / (1 - 2 * beta * c2);
            };
            T s = integrate_unit<T>(f2, phi, pi<T>() / 2, true);
            if (phi > 0)
                s += integrate_unit<T>(f1, T(0), phi, true);
            return s / (2 * pi<T>());
        }
        if (alpha == 0)
        {
            // (1/sqrt(1 - 2 beta) - 1) / (4 beta)
            using boost::math::log1p;
            const T l = -log1p(T(-2 * beta)) / 2;
            return expm1(l) / (4 * beta);
        }
        const T r2a = sqrt(T(2)) * alpha;
        return (r2a * hfun<T>(2 * (a2 - beta)) + hfun<T>((1 - 2 * beta) / (2 * a2)) / r2a) / (2 * pi<T>() * beta) -
               1 / (4 * beta);
    }
}

#endif
