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

// Precision-generic mixture coefficients and per-pair terms of F, W1 and W2.
// Inputs are always the exact double powers; every tier recomputes from them.

#ifndef MACROMRC_DETAIL_MIXTURE_TERMS_HPP
#define MACROMRC_DETAIL_MIXTURE_TERMS_HPP

#include "macromrc/detail/wide_math.hpp"

#include <cstddef>
#include <vector>

namespace macromrc::detail
{
    template <class T>
    struct PairT
    {
        std::size_t i, k;
        T xi, beta, omega, alpha, q, p; // q = Q_i, p = P_i1
    };

    // Pairs (i,k), i != k, in row-major order. d[i] = sum_u P_iu |s_u|^2 + sigma^2.
    template <class T>
    std::vector<PairT<T>> mixture_pairs(const std::vector<double> &p1, const std::vector<double> &d)
    {
        using std::pow;
        const std::size_t n = p1.size();
        std::vector<T> P(n), Q(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            P[i] = T(p1[i]);
            Q[i] = T(d[i]) * P[i];
        }
        auto ups = [&](std::size_t i, std::size_t k) { return T(P[i] * Q[k] - Q[i] * P[k]); };
        auto nu = [&](std::size_t i, std::size_t k) { return T(P[i] - P[k]); };

        std::vector<PairT<T>> out;
        out.reserve(n * (n - 1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
            {
                if (i == k)
                    continue;
                const T u_ik = ups(i, k), n_ik = nu(i, k);
                T den = 1;
                for (std::size_t l = 0; l < n; ++l)
                    if (l != i && l != k)
                        den *= u_ik * nu(i, l) - n_ik * ups(i, l);
                T xi = 1;
                for (std::size_t e = 2; e < n; ++e)
                    xi *= P[i];
                if (n >= 3)
                    for (std::size_t e = 3; e < n; ++e)
                        xi *= u_ik;
                else
                    xi /= u_ik; // n = 2: upsilon^-1
                xi /= den;
                const T beta = n_ik / u_ik;
                const T omega = (Q[k] - Q[i]) / u_ik;
                const T alpha = Q[i] / P[i] + omega / (2 * beta);
                out.push_back({i, k, xi, beta, omega, alpha, Q[i], P[i]});
            }
        return out;
    }

    // Weights of the distinct-rate hypoexponential mixture, prod_{k != i} P_i / (P_i - P_k).
    template <class T>
    std::vector<T> hypo_weights(const std::vector<double> &p1)
    {
        const std::size_t n = p1.size();
        std::vector<T> w(n, T(1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                if (k != i)
                    w[i] *= T(p1[i]) / (T(p1[i]) - T(p1[k]));
        return w;
    }

    // F_ik(r)
    template <class T>
    T cdf_pair_term(const PairT<T> &c, const T &r)
    {
        using std::exp;
        using std::sqrt;
        const T cq = c.q / c.p;
        const T decay = r * cq / c.p;
        const T e = exp(-decay);
        const T A = c.xi * c.p / c.beta * (-expm1<T>(-decay));
        T B;
        if (c.beta > 0)
            B = c.xi / (2 * c.beta) * sqrt(pi<T>() * r / c.beta) * e * erfcx<T>(sqrt(r * c.beta) * c.alpha);
        else
        {
            const T bb = -c.beta;
            B = -c.xi / c.beta * sqrt(r / bb) *
                (e * dawson<T>(sqrt(r * bb) * c.alpha) + dawson<T>(sqrt(r / bb) * c.omega / 2));
        }
        return A + B;
    }

    // 1/sqrt2 - 1/(2 sqrt(1/2 + c)) without cancellation at small c
    template <class T>
    T w1_offset(const T &cp)
    {
        using std::sqrt;
        const T h = T(0.5) + cp;
        const T sh = sqrt(h);
        return 2 * cp / (sqrt(T(2)) * sh * (2 * sh + sqrt(T(2))));
    }

    // 1/sqrt8 - atan(sqrt(1 + 2c)) / (pi sqrt(1/2 + c)) without cancellation at small c
    template <class T>
    T w2_offset(const T &cp)
    {
        using std::atan;
        using std::sqrt;
        const T u = sqrt(1 + 2 * cp);
        const T um1 = 2 * cp / (u + 1);
        return sqrt(T(2)) / (pi<T>() * u) * (um1 * pi<T>() / 4 - atan(um1 / (1 + u)));
    }

    // a E{Q(sqrt(b gamma))} contribution of pair (i,k)
    template <class T>
    T w1_pair_term(const PairT<T> &c, const T &a, const T &b)
    {
        using std::sqrt;
        const T cp = c.q / (b * c.p * c.p);
        const T h = T(0.5) + cp;
        const T A = a / sqrt(T(2)) * c.xi * c.p / c.beta * w1_offset(cp);
        T B;
        if (c.beta > 0)
        {
            const T s = c.alpha * sqrt(c.beta / (b * h));
            B = a / sqrt(2 * pi<T>()) * c.xi / (2 * c.beta) * sqrt(pi<T>() / (b * c.beta)) / (2 * h * (s + 1));
        }
        else
        {
            const T bb = -c.beta;
            B = a / sqrt(T(2)) * sqrt(b / bb) * c.xi / (c.omega * c.omega + 2 * b * bb) *
                (sqrt(bb / (b * h)) * c.alpha + c.omega / sqrt(2 * b * bb));
        }
        return A + B;
    }

    template <class T>
    T signed_i1r(const T &kappa, const T &mu)
    {
        using std::abs;
        const T v = integral_i1r<T>(T(abs(kappa)), mu);
        return kappa < 0 ? T(-v) : v;
    }

    // a E{Q^2(sqrt(b gamma))} contribution of pair (i,k)
    template <class T>
    T w2_pair_term(const PairT<T> &c, const T &a, const T &b)
    {
        using std::sqrt;
        const T cp = c.q / (b * c.p * c.p);
        const T A = a / sqrt(T(2)) * c.xi * c.p / c.beta * w2_offset(cp);
        T B;
        if (c.beta > 0)
        {
            const T arg_b = c.omega * c.omega / (4 * b * c.beta) - T(0.5);
            B = a / sqrt(T(2)) * c.xi / (sqrt(b * c.beta) * c.beta) * integral_i2<T>(T(c.alpha * sqrt(c.beta / b)), arg_b);
        }
        else
        {
            const T bb = -c.beta;
            const T mu = T(0.5) + c.omega * c.omega / (4 * b * bb);
            const T k1 = c.alpha * sqrt(bb / b);
            const T k2 = c.omega / (2 * sqrt(b * bb));
            B = -a / sqrt(T(2)) * c.xi / (sqrt(b * bb) * c.beta) * (signed_i1r(k1, mu) + signed_i1r(k2, mu));
        }
        return A + B;
    }

    // Single-exponential building blocks for the constant-D route, gamma = X / d.
    template <class T>
    T scalar_cdf_term(const T &weight, const T &p, const T &d, const T &r)
    {
        return weight * (-expm1<T>(-r * d / p));
    }

    template <class T>
    T scalar_w1_term(const T &weight, const T &p, const T &d, const T &a, const T &b)
    {
        using std::sqrt;
        const T x = 2 * d / (b * p);
        const T s = sqrt(1 + x);
        return weight * a / 2 * x / (s * (s + 1));
    }

    template <class T>
    T scalar_w2_term(const T &weight, const T &p, const T &d, const T &a, const T &b)
    {
        using std::sqrt;
        return weight * a / sqrt(T(2)) * w2_offset(T(d / (b * p)));
    }
}

#endif
