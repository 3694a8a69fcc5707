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

#include "macromrc/ser_analytic.hpp"
#include "macromrc/detail/mixture_terms.hpp"
#include "macromrc/errors.hpp"

#include <cmath>

namespace macromrc
{
    namespace
    {
        struct Weighted
        {
            double a, b;
            bool squared;
            double sign;
        };

        // Signed terms of sum_j sign_j a_j W_j(b_j), grouped per ser term then per pair / antenna.
        TieredResult evaluate_terms(const GammaModel &m, const std::vector<Weighted> &spec, const TierPolicy &policy)
        {
            for (const auto &s : spec)
                if (!(s.b > 0.0))
                    throw InvalidParameter("SER coefficient b must be positive");
            if (m.kind == ModelKind::unbounded)
                return {};

            auto fn = [&](auto tag)
            {
                using T = decltype(tag);
                std::vector<T> terms;
                if (m.kind == ModelKind::mixture)
                {
                    const auto pairs = detail::mixture_pairs<T>(m.p1, m.d);
                    for (const auto &s : spec)
                    {
                        const T a(s.a), b(s.b), sg(s.sign);
                        for (const auto &c : pairs)
                            terms.push_back(sg * (s.squared ? detail::w2_pair_term<T>(c, a, b) : detail::w1_pair_term<T>(c, a, b)));
                    }
                }
                else
                {
                    const auto w = detail::hypo_weights<T>(m.p1);
                    const T d(m.d.front());
                    for (const auto &s : spec)
                    {
                        const T a(s.a), b(s.b), sg(s.sign);
                        for (std::size_t i = 0; i < m.p1.size(); ++i)
                        {
                            const T p(m.p1[i]);
                            terms.push_back(sg * (s.squared ? detail::scalar_w2_term<T>(w[i], p, d, a, b)
                                                            : detail::scalar_w1_term<T>(w[i], p, d, a, b)));
                        }
                    }
                }
                return terms;
            };
            return evaluate_tiered(fn, 8.0 * m.condition, policy);
        }

        std::vector<Weighted> weights_for(const Modulation &mod)
        {
            std::vector<Weighted> w;
            for (const auto &t : mod.ser_terms)
                w.push_back({t.a, t.b, t.squared, t.squared ? -1.0 : 1.0});
            return w;
        }

        ProfileContribution profile_ser(const Modulation &mod, const SystemConfig &config,
                                        const InterfererMagnitudeProfile &profile, const AnalysisOptions &opt)
        {
            const auto model = build_gamma_model(config, profile, opt);
            const auto res = evaluate_terms(model, weights_for(mod), opt.tiers);

            ProfileContribution pc;
            pc.profile = profile;
            pc.kind = model.kind;
            pc.desired_perturbed = model.desired_perturbed;
            pc.interference_perturbed = model.interference_perturbed;
            pc.digits = res.digits;
            pc.value = res.value;
            if (!res.terms.empty())
            {
                const std::size_t n = model.p1.size();
                const std::size_t per = model.kind == ModelKind::mixture ? n * (n - 1) : n;
                for (std::size_t j = 0; j < per; ++j)
                {
                    PairContribution c;
                    if (model.kind == ModelKind::mixture)
                    {
                        c.i = j / (n - 1);
                        const std::size_t kk = j % (n - 1);
                        c.k = kk < c.i ? kk : kk + 1;
                    }
                    else
                        c.i = c.k = j;
                    for (std::size_t t = j; t < res.terms.size(); t += per)
                        c.value += res.terms[t];
                    pc.terms.push_back(c);
                }
            }
            return pc;
        }

        double ser_value(const Modulation &mod, const SystemConfig &config, const AnalysisOptions &opt,
                         std::vector<ProfileContribution> *breakdown, double *weight_sum, bool *perturbed)
        {
            const auto profiles = enumerate_profiles(mod, config, opt.profile_cap);
            CompensatedSum<double> total, wsum;
            for (const auto &p : profiles)
            {
                auto pc = profile_ser(mod, config, p, opt);
                total.add(p.probability * pc.value);
                wsum.add(p.probability);
                if (perturbed && (pc.desired_perturbed || pc.interference_perturbed))
                    *perturbed = true;
                if (breakdown)
                    breakdown->push_back(std::move(pc));
            }
            if (weight_sum)
                *weight_sum = wsum.value();
            return total.value();
        }
    }

    double w1(double a, double b, const GammaModel &model, const TierPolicy &policy)
    {
        if (a == 0.0)
            return 0.0;
        return evaluate_terms(model, {{a, b, false, 1.0}}, policy).value;
    }

    double w2(double a, double b, const GammaModel &model, const TierPolicy &policy)
    {
        if (a == 0.0)
            return 0.0;
        return evaluate_terms(model, {{a, b, true, 1.0}}, policy).value;
    }

    double w1(double a, double b, const SystemConfig &config, const InterfererMagnitudeProfile &profile,
              const AnalysisOptions &options)
    {
        return w1(a, b, build_gamma_model(config, profile, options), options.tiers);
    }

    double w2(double a, double b, const SystemConfig &config, const InterfererMagnitudeProfile &profile,
              const AnalysisOptions &options)
    {
        return w2(a, b, build_gamma_model(config, profile, options), options.tiers);
    }

    double average_over_symbols(const std::function<double(const InterfererMagnitudeProfile &)> &term,
                                const Modulation &modulation, const SystemConfig &config, std::size_t cap)
    {
        CompensatedSum<double> s;
        for (const auto &p : enumerate_profiles(modulation, config, cap))
            s.add(p.probability * term(p));
        return s.value();
    }

    SerResult ser(const Modulation &modulation, const SystemConfig &config, const AnalysisOptions &options)
    {
        config.validate();
        SerResult r;
        r.value = ser_value(modulation, config, options, &r.breakdown, &r.weight_sum, &r.perturbed);
        if (r.value < 0.0 && r.value > -1e-12)
            r.value = 0.0;
        if (!(r.value >= 0.0 && r.value <= 1.0))
            throw AccuracyError("SER evaluated outside [0, 1]: " + std::to_string(r.value));

        if (r.perturbed && options.check_stability && options.perturb_epsilon_rel)
        {
            AnalysisOptions half = options;
            half.perturb_epsilon_rel = *options.perturb_epsilon_rel / 2.0;
            half.check_stability = false;
            const double v2 = ser_value(modulation, config, half, nullptr, nullptr, nullptr);
            r.perturbation_drift = r.value > 0.0 ? std::abs(r.value - v2) / r.value : std::abs(v2);
            if (r.perturbation_drift > options.stability_tolerance)
                throw AccuracyError("perturbed SER is not stable: relative change " +
                                    std::to_string(r.perturbation_drift) + " between epsilon and epsilon/2");
        }
        return r;
    }

    double error_floor(const Modulation &modulation, const SystemConfig &config, const AnalysisOptions &options)
    {
        config.validate();
        bool any = false;
        for (const auto &m : config.interferers)
            for (double v : m.entries)
                any = any || v > 0.0;
        if (!any)
            return 0.0;
        SystemConfig c = config;
        c.noise_power = 0.0;
        return ser(modulation, c, options).value;
    }

    std::vector<std::pair<double, double>> ser_curve(const Modulation &modulation, const SystemConfig &config,
                                                     const std::vector<double> &rho_grid_db,
                                                     const AnalysisOptions &options)
    {
        std::vector<std::pair<double, double>> out;
        out.reserve(rho_grid_db.size());
        for (double rho : rho_grid_db)
            out.emplace_back(rho, ser(modulation, config.with_rho_db(rho), options).value);
        return out;
    }

    std::vector<std::pair<double, double>> ser_curve(const Modulation &modulation, const ScenarioParams &scenario,
                                                     const std::vector<double> &rho_grid_db,
                                                     const AnalysisOptions &options)
    {
        return ser_curve(modulation, scenario_to_config(scenario), rho_grid_db, options);
    }
}
