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

#include "macromrc/gamma_dist.hpp"
#include "macromrc/detail/mixture_terms.hpp"
#include "macromrc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace macromrc
{
    namespace
    {
        double rel_cond(double a, double b, double diff)
        {
            if (diff == 0.0)
                return std::numeric_limits<double>::infinity();
            return (std::abs(a) + std::abs(b)) / std::abs(diff);
        }

        void check_distinct(const std::vector<double> &v, const char *what)
        {
            const auto groups = coincident_groups(v);
            if (!groups.empty())
                throw CoincidentPowerError(what, groups.front()[0], groups.front()[1]);
        }

        // Throws on the first (numerically) vanishing denominator of the partial-fraction expansion.
        void check_singular(const std::vector<double> &p1, const std::vector<double> &d, double thr)
        {
            const std::size_t n = p1.size();
            std::vector<double> q(n);
            for (std::size_t i = 0; i < n; ++i)
                q[i] = d[i] * p1[i];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                {
                    if (i == k)
                        continue;
                    const double a = p1[i] * q[k], b = q[i] * p1[k];
                    const double u_ik = a - b;
                    if (std::abs(u_ik) <= thr * (std::abs(a) + std::abs(b)))
                        throw CoincidentPowerError("interference-plus-noise", std::min(i, k), std::max(i, k));
                    const double n_ik = p1[i] - p1[k];
                    for (std::size_t l = 0; l < n; ++l)
                    {
                        if (l == i || l == k)
                            continue;
                        const double x = u_ik * (p1[i] - p1[l]);
                        const double y = n_ik * (p1[i] * q[l] - q[i] * p1[l]);
                        if (std::abs(x - y) <= thr * (std::abs(x) + std::abs(y)))
                            throw NearSingularError(i, k, l);
                    }
                }
        }

        double mixture_condition(const std::vector<double> &p1, const std::vector<double> &d)
        {
            const std::size_t n = p1.size();
            std::vector<double> q(n);
            for (std::size_t i = 0; i < n; ++i)
                q[i] = d[i] * p1[i];
            auto ku = [&](std::size_t i, std::size_t k)
            { return rel_cond(p1[i] * q[k], q[i] * p1[k], p1[i] * q[k] - q[i] * p1[k]); };
            auto kn = [&](std::size_t i, std::size_t k) { return rel_cond(p1[i], p1[k], p1[i] - p1[k]); };
            double worst = 1.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < n; ++k)
                {
                    if (i == k)
                        continue;
                    const double u_ik = p1[i] * q[k] - q[i] * p1[k], n_ik = p1[i] - p1[k];
                    double kxi = double(n > 3 ? n - 3 : 1) * ku(i, k);
                    for (std::size_t l = 0; l < n; ++l)
                    {
                        if (l == i || l == k)
                            continue;
                        const double x = u_ik * (p1[i] - p1[l]);
                        const double y = n_ik * (p1[i] * q[l] - q[i] * p1[l]);
                        kxi += rel_cond(x, y, x - y) + ku(i, k) + kn(i, l) + kn(i, k) + ku(i, l);
                    }
                    const double beta = n_ik / u_ik;
                    const double omega = (q[k] - q[i]) / u_ik;
                    const double alpha = q[i] / p1[i] + omega / (2.0 * beta);
                    const double kbeta = kn(i, k) + ku(i, k);
                    const double komega = rel_cond(q[k], q[i], q[k] - q[i]) + ku(i, k);
                    const double kalpha = rel_cond(q[i] / p1[i], omega / (2.0 * beta), alpha) + komega + kbeta;
                    worst = std::max(worst, kxi + kbeta + komega + kalpha);
                }
            return worst;
        }

        double hypo_condition(const std::vector<double> &p1)
        {
            double worst = 1.0;
            for (std::size_t i = 0; i < p1.size(); ++i)
            {
                double k = 0.0;
                for (std::size_t j = 0; j < p1.size(); ++j)
                    if (j != i)
                        k += rel_cond(p1[i], p1[j], p1[i] - p1[j]);
                worst = std::max(worst, k);
            }
            return worst;
        }

        double clamp_probability(double v)
        {
            if (!std::isfinite(v) || v < -1e-9 || v > 1.0 + 1e-9)
                throw AccuracyError("CDF evaluated to " + std::to_string(v) + ", outside [0, 1] beyond tolerance");
            return std::clamp(v, 0.0, 1.0);
        }

        // Extra amplification of argument rounding through exp(-r c / P) and the erf-family factors.
        double cdf_argument_condition(double r, const std::vector<double> &p1, const std::vector<double> &d)
        {
            double m = 0.0;
            for (std::size_t i = 0; i < p1.size(); ++i)
                m = std::max(m, r * d[i] / p1[i]);
            return 1.0 + 2.0 * m;
        }

        double mixture_cdf(double r, const std::vector<double> &p1, const std::vector<double> &d, double condition,
                           const TierPolicy &policy)
        {
            double arg = cdf_argument_condition(r, p1, d);
            auto fn = [&](auto tag)
            {
                using T = decltype(tag);
                const auto pairs = detail::mixture_pairs<T>(p1, d);
                std::vector<T> terms;
                terms.reserve(pairs.size());
                const T rr(r);
                for (const auto &c : pairs)
                    terms.push_back(detail::cdf_pair_term<T>(c, rr));
                return terms;
            };
            // erfcx/dawson arguments grow like sqrt(r); their relative condition is about 2 z^2
            for (const auto &c : detail::mixture_pairs<double>(p1, d))
            {
                arg = std::max(arg, 1.0 + 2.0 * r * std::abs(c.beta) * c.alpha * c.alpha);
                arg = std::max(arg, 1.0 + r * c.omega * c.omega / (2.0 * std::abs(c.beta)));
            }
            return evaluate_tiered(fn, condition * arg, policy).value;
        }

        double scalar_cdf(double r, const std::vector<double> &p1, double d, double condition, const TierPolicy &policy)
        {
            auto fn = [&](auto tag)
            {
                using T = decltype(tag);
                const auto w = detail::hypo_weights<T>(p1);
                std::vector<T> terms;
                for (std::size_t i = 0; i < p1.size(); ++i)
                    terms.push_back(detail::scalar_cdf_term<T>(w[i], T(p1[i]), T(d), T(r)));
                return terms;
            };
            const std::vector<double> dv(p1.size(), d);
            return evaluate_tiered(fn, condition * cdf_argument_condition(r, p1, dv), policy).value;
        }
    }

    InterfererMagnitudeProfile unit_profile(const SystemConfig &config)
    {
        return {std::vector<double>(config.interferers.size(), 1.0), 1.0};
    }

    MixtureCoefficients mixture_coefficients(const std::vector<double> &p1, const std::vector<double> &d,
                                             double singular_threshold)
    {
        const std::size_t n = p1.size();
        if (n < 2)
            throw InvalidParameter("mixture coefficients need n_R >= 2");
        if (d.size() != n)
            throw InvalidParameter("weight vector length differs from n_R");
        for (std::size_t i = 0; i < n; ++i)
        {
            if (!(p1[i] > 0.0))
                throw InvalidParameter("desired powers must be positive");
            if (!(d[i] > 0.0))
                throw InvalidParameter("interference-plus-noise power on antenna " + std::to_string(i + 1) +
                                       " must be positive");
        }
        check_distinct(p1, "desired");
        check_singular(p1, d, singular_threshold);

        MixtureCoefficients out;
        out.p1 = p1;
        out.d = d;
        out.q.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out.q[i] = d[i] * p1[i];

        // Round the 50-digit values so that the reported coefficients are correct to double precision.
        for (const auto &c : detail::mixture_pairs<real50>(p1, d))
        {
            PairCoefficients pc;
            pc.i = c.i;
            pc.k = c.k;
            pc.xi = static_cast<double>(c.xi);
            pc.beta = static_cast<double>(c.beta);
            pc.omega = static_cast<double>(c.omega);
            pc.alpha = static_cast<double>(c.alpha);
            pc.upsilon = static_cast<double>(real50(p1[c.i]) * real50(out.q[c.k]) - real50(out.q[c.i]) * real50(p1[c.k]));
            pc.nu = static_cast<double>(real50(p1[c.i]) - real50(p1[c.k]));
            out.pairs.push_back(pc);
        }
        out.condition = mixture_condition(p1, d);
        return out;
    }

    MixtureCoefficients mixture_coefficients(const SystemConfig &config, const InterfererMagnitudeProfile &profile,
                                             double singular_threshold)
    {
        config.validate();
        auto d = aggregate_interferers(config.interferers, profile.magnitudes, config.n_r()).entries;
        for (double &v : d)
            v += config.noise_power;
        return mixture_coefficients(config.desired.entries, d, singular_threshold);
    }

    double joint_pdf(double x, double y, const MixtureCoefficients &c)
    {
        if (x < 0.0 || y < 0.0)
            return 0.0;
        double s = 0.0;
        for (const auto &pc : c.pairs)
        {
            const double p = c.p1[pc.i];
            const double edge = c.q[pc.i] / p * x;
            const double v = pc.xi * std::exp(-x / p - pc.beta * (y - edge));
            if (pc.beta > 0.0 && y >= edge)
                s += v;
            else if (pc.beta < 0.0 && y < edge)
                s -= v;
        }
        return s;
    }

    double gamma_cdf(double r, const MixtureCoefficients &c, const TierPolicy &policy)
    {
        if (std::isnan(r))
            throw InvalidParameter("CDF argument is NaN");
        if (r <= 0.0)
            return 0.0;
        if (std::isinf(r))
            return 1.0;
        return clamp_probability(mixture_cdf(r, c.p1, c.d, c.condition, policy));
    }

    GammaModel build_gamma_model(std::vector<double> p1, std::vector<double> d, const AnalysisOptions &opt)
    {
        const std::size_t n = p1.size();
        if (n == 0 || d.size() != n)
            throw InvalidParameter("power vectors are empty or differ in length");
        for (std::size_t i = 0; i < n; ++i)
            if (!(p1[i] > 0.0) || !std::isfinite(p1[i]) || !(d[i] >= 0.0) || !std::isfinite(d[i]))
                throw InvalidParameter("powers must be finite, desired > 0 and interference-plus-noise >= 0");

        GammaModel m;
        const auto groups = coincident_groups(p1);
        if (!groups.empty())
        {
            if (!opt.perturb_epsilon_rel)
                throw CoincidentPowerError("desired", groups.front()[0], groups.front()[1]);
            SystemConfig tmp;
            tmp.desired.entries = p1;
            p1 = perturb_coincident_powers(tmp, *opt.perturb_epsilon_rel).desired.entries;
            m.desired_perturbed = true;
        }

        const bool all_zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
        m.p1 = p1;
        if (all_zero)
        {
            m.kind = ModelKind::unbounded;
            m.d = d;
            return m;
        }
        for (std::size_t i = 0; i < n; ++i)
            if (d[i] == 0.0)
                throw InvalidParameter("interference-plus-noise power vanishes on antenna " + std::to_string(i + 1) +
                                       " but not on all antennas");

        const auto [lo, hi] = std::minmax_element(d.begin(), d.end());
        if (*hi - *lo <= 1e-12 * *hi)
        {
            double mean = 0.0;
            for (double v : d)
                mean += v;
            mean /= double(n);
            m.kind = ModelKind::scalar;
            m.d.assign(n, mean);
            m.condition = hypo_condition(p1);
            return m;
        }

        m.kind = ModelKind::mixture;
        try
        {
            m.mixture = mixture_coefficients(p1, d, opt.singular_threshold);
        }
        catch (const CoincidentPowerError &e)
        {
            if (!opt.perturb_epsilon_rel)
                throw;
        }
        catch (const NearSingularError &)
        {
            if (!opt.perturb_epsilon_rel)
                throw;
        }
        if (!m.mixture)
        {
            // Separate the weights with a smooth, normalised quadratic pattern over the antenna index.
            const double eps = *opt.perturb_epsilon_rel;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double t = n > 1 ? double(i) / double(n - 1) : 0.0;
                d[i] *= 1.0 + eps * t * t;
            }
            // Paired antennas leave determinants of order eps^2; the tier ladder absorbs the cancellation.
            const double thr = std::min(opt.singular_threshold, 1e-3 * eps * eps);
            m.mixture = mixture_coefficients(p1, d, thr);
            m.interference_perturbed = true;
        }
        m.d = d;
        m.condition = m.mixture->condition;
        return m;
    }

    GammaModel build_gamma_model(const SystemConfig &config, const InterfererMagnitudeProfile &profile,
                                 const AnalysisOptions &opt)
    {
        config.validate();
        auto d = aggregate_interferers(config.interferers, profile.magnitudes, config.n_r()).entries;
        for (double &v : d)
            v += config.noise_power;
        return build_gamma_model(config.desired.entries, std::move(d), opt);
    }

    double gamma_cdf(double r, const GammaModel &m, const TierPolicy &policy)
    {
        if (std::isnan(r))
            throw InvalidParameter("CDF argument is NaN");
        if (r <= 0.0)
            return 0.0;
        switch (m.kind)
        {
        case ModelKind::unbounded:
            return 0.0;
        case ModelKind::scalar:
            if (std::isinf(r))
                return 1.0;
            return clamp_probability(scalar_cdf(r, m.p1, m.d.front(), m.condition, policy));
        case ModelKind::mixture:
            return gamma_cdf(r, *m.mixture, policy);
        }
        return 0.0;
    }

    double outage_probability(const SystemConfig &config, const InterfererMagnitudeProfile &profile, double threshold,
                              bool threshold_in_db, const AnalysisOptions &opt)
    {
        double r = threshold;
        if (threshold_in_db)
            r = std::isinf(threshold) ? (threshold > 0 ? threshold : 0.0) : std::pow(10.0, threshold / 10.0);
        const auto model = build_gamma_model(config, profile, opt);
        return gamma_cdf(r, model, opt.tiers);
    }
}
