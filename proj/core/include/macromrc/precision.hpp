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

#ifndef MACROMRC_PRECISION_HPP
#define MACROMRC_PRECISION_HPP

#include "macromrc/errors.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace macromrc
{
    using real50 = boost::multiprecision::cpp_bin_float_50;
    using real100 = boost::multiprecision::cpp_bin_float_100;
    using real200 = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<200>>;

    // Neumaier compensated summation.
    template <class T>
    class CompensatedSum
    {
    public:
        void add(const T &x)
        {
            using std::abs;
            const T t = sum_ + x;
            if (abs(sum_) >= abs(x))
                comp_ += (sum_ - t) + x;
            else
                comp_ += (x - t) + sum_;
            sum_ = t;
            abs_ += abs(x);
        }
        T value() const { return sum_ + comp_; }
        T abs_sum() const { return abs_; }

    private:
        T sum_ = T(0), comp_ = T(0), abs_ = T(0);
    };

    struct TierPolicy
    {
        // Accept a tier once it agrees with the next wider one to this relative tolerance.
        double rel_tol = 1e-12;
        // Values this small in absolute terms count as agreement.
        double abs_tol = 1e-300;
        // Accept the double tier outright when its a-priori error bound is below rel_tol.
        bool allow_double_fast_path = true;
    };

    struct TieredResult
    {
        double value = 0.0;
        std::vector<double> terms; // per-term contributions of the accepted tier
        double abs_sum = 0.0;      // sum of |terms|
        int digits = 16;           // decimal digits of the accepted tier
    };

    namespace detail
    {
        template <class T>
        struct TierSum
        {
            T value;
            T abs_sum;
            std::vector<T> terms;
        };

        template <class T>
        TierSum<T> sum_terms(std::vector<T> terms)
        {
            CompensatedSum<T> s;
            for (const auto &t : terms)
                s.add(t);
            return {s.value(), s.abs_sum(), std::move(terms)};
        }

        template <class T>
        TieredResult to_result(const TierSum<T> &s, int digits)
        {
            TieredResult r;
            r.value = static_cast<double>(s.value);
            r.abs_sum = static_cast<double>(s.abs_sum);
            r.digits = digits;
            r.terms.reserve(s.terms.size());
            for (const auto &t : s.terms)
                r.terms.push_back(static_cast<double>(t));
            return r;
        }

        template <class A, class B>
        bool agree(const A &lo, const B &hi, const TierPolicy &p)
        {
            using std::abs;
            const B d = abs(B(lo) - hi);
            return d <= p.rel_tol * abs(hi) || d <= p.abs_tol;
        }
    }

    // Evaluates fn in widening precision until two consecutive tiers agree.
    // fn is a generic callable: fn(T{}) returns std::vector<T> of signed terms to be summed.
    // condition is a first-order bound on the relative error amplification of the terms;
    // the double tier is accepted without a wider check when u * condition * sum|terms| is small
    // enough relative to the sum.
    template <class Fn>
    TieredResult evaluate_tiered(Fn &&fn, double condition, const TierPolicy &policy = {})
    {
        // Rounding in the double tier can push an intermediate outside a validity region; the
        // wider tiers then decide.
        detail::TierSum<double> d{std::numeric_limits<double>::quiet_NaN(), 0.0, {}};
        try
        {
            d = detail::sum_terms(fn(double{}));
        }
        catch (const OutOfRegionError &)
        {
        }
        if (policy.allow_double_fast_path && std::isfinite(condition) && std::isfinite(d.value))
        {
            const double u = std::numeric_limits<double>::epsilon();
            const double bound = 32.0 * u * (condition + 16.0) * d.abs_sum;
            if (bound <= policy.rel_tol * std::abs(d.value) || (d.abs_sum == 0.0))
                return detail::to_result(d, 16);
        }

        auto t50 = detail::sum_terms(fn(real50{}));
        if (std::isfinite(d.value) && detail::agree(d.value, t50.value, policy))
            return detail::to_result(t50, 50);
        auto t100 = detail::sum_terms(fn(real100{}));
        if (detail::agree(t50.value, t100.value, policy))
            return detail::to_result(t100, 100);
        auto t200 = detail::sum_terms(fn(real200{}));
        if (detail::agree(t100.value, t200.value, policy))
            return detail::to_result(t200, 200);
        throw AccuracyError("term sum did not stabilise at 200 digits (100-digit value " +
                            std::to_string(static_cast<double>(t100.value)) + ", 200-digit value " +
                            std::to_string(static_cast<double>(t200.value)) + ")");
    }
}

#endif
