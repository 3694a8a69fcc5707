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

#include "macromrc/power_model.hpp"
#include "macromrc/errors.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace macromrc
{
    double PowerMatrix::trace() const
    {
        return std::accumulate(entries.begin(), entries.end(), 0.0);
    }

    void SystemConfig::validate() const
    {
        const std::size_t n = n_r();
        if (n == 0)
            throw InvalidParameter("desired power matrix is empty");
        for (std::size_t i = 0; i < n; ++i)
            if (!(desired.entries[i] > 0.0) || !std::isfinite(desired.entries[i]))
                throw InvalidParameter("desired power on antenna " + std::to_string(i + 1) + " must be positive and finite");
        for (std::size_t k = 0; k < interferers.size(); ++k)
        {
            const auto &m = interferers[k];
            if (m.n_r() != n)
                throw InvalidParameter("interferer " + std::to_string(k + 1) + " has " + std::to_string(m.n_r()) +
                                       " entries, expected " + std::to_string(n));
            for (double v : m.entries)
                if (!(v >= 0.0) || !std::isfinite(v))
                    throw InvalidParameter("interferer " + std::to_string(k + 1) + " has a negative or non-finite power");
        }
        if (!(noise_power >= 0.0) || !std::isfinite(noise_power))
            throw InvalidParameter("noise power must be finite and >= 0");
    }

    SystemConfig SystemConfig::scaled(double c) const
    {
        if (!(c > 0.0))
            throw InvalidParameter("scale factor must be positive");
        SystemConfig out = *this;
        for (double &v : out.desired.entries)
            v *= c;
        for (auto &m : out.interferers)
            for (double &v : m.entries)
                v *= c;
        out.noise_power *= c;
        return out;
    }

    static double noise_from_rho(double trace, std::size_t n_r, double rho_db)
    {
        if (std::isinf(rho_db) && rho_db > 0.0)
            return 0.0;
        if (std::isnan(rho_db))
            throw InvalidParameter("rho_db is NaN");
        return trace / (double(n_r) * std::pow(10.0, rho_db / 10.0));
    }

    SystemConfig SystemConfig::with_rho_db(double rho_db) const
    {
        SystemConfig out = *this;
        out.noise_power = noise_from_rho(desired.trace(), n_r(), rho_db);
        if (out.normalization)
            out.normalization->rho_db = rho_db;
        return out;
    }

    PowerMatrix exponential_profile(double trace, double alpha, std::size_t n_r)
    {
        if (!(trace > 0.0) || !std::isfinite(trace))
            throw InvalidParameter("profile trace must be positive");
        if (!(alpha > 0.0) || !std::isfinite(alpha))
            throw InvalidParameter("profile decay alpha must be positive");
        if (n_r == 0)
            throw InvalidParameter("n_R must be at least 1");

        std::vector<double> w(n_r);
        double s = 0.0;
        for (std::size_t i = 0; i < n_r; ++i)
        {
            w[i] = std::pow(alpha, double(i));
            s += w[i];
        }
        const double K = trace / s;
        for (double &v : w)
            v *= K;
        return {std::move(w), ""};
    }

    SystemConfig scenario_to_config(const ScenarioParams &p)
    {
        if (!(p.varsigma > 0.0) || !std::isfinite(p.varsigma))
            throw InvalidParameter("varsigma must be positive");
        if (p.n_r == 0)
            throw InvalidParameter("n_R must be at least 1");
        if (p.antennas_per_site == 0 || p.n_r % p.antennas_per_site != 0)
            throw InvalidParameter("n_R must be a multiple of antennas_per_site");
        const double trace = p.trace_norm.value_or(double(p.n_r));
        const std::size_t sites = p.n_r / p.antennas_per_site;

        auto spread = [&](const PowerMatrix &per_site, std::string id)
        {
            PowerMatrix m;
            m.source_id = std::move(id);
            m.entries.reserve(p.n_r);
            for (double v : per_site.entries)
                for (std::size_t a = 0; a < p.antennas_per_site; ++a)
                    m.entries.push_back(v / double(p.antennas_per_site));
            return m;
        };

        SystemConfig cfg;
        cfg.desired = spread(exponential_profile(trace, p.alpha_desired, sites), "desired");
        cfg.interferers.push_back(spread(exponential_profile(trace / p.varsigma, p.alpha_interferer, sites), "interferer"));
        cfg.noise_power = noise_from_rho(trace, p.n_r, p.rho_db);
        cfg.normalization = Normalization{"desired trace = " + std::to_string(trace), p.rho_db, p.varsigma};
        return cfg;
    }

    PowerMatrix aggregate_interferers(const std::vector<PowerMatrix> &interferers, const std::vector<double> &magnitudes,
                                      std::size_t n_r)
    {
        if (interferers.size() != magnitudes.size())
            throw InvalidParameter("interferer and magnitude lists differ in length");
        PowerMatrix out{std::vector<double>(n_r, 0.0), "aggregate"};
        for (std::size_t k = 0; k < interferers.size(); ++k)
        {
            if (interferers[k].n_r() != n_r)
                throw InvalidParameter("interferer " + std::to_string(k + 1) + " has the wrong length");
            for (std::size_t i = 0; i < n_r; ++i)
                out.entries[i] += magnitudes[k] * interferers[k].entries[i];
        }
        return out;
    }

    std::vector<std::vector<std::size_t>> coincident_groups(const std::vector<double> &values, double rel_tol)
    {
        std::vector<std::vector<std::size_t>> groups;
        std::vector<bool> used(values.size(), false);
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            if (used[i])
                continue;
            std::vector<std::size_t> g{i};
            for (std::size_t j = i + 1; j < values.size(); ++j)
            {
                if (used[j])
                    continue;
                const double scale = std::max(std::abs(values[i]), std::abs(values[j]));
                if (std::abs(values[i] - values[j]) <= rel_tol * scale)
                {
                    g.push_back(j);
                    used[j] = true;
                }
            }
            if (g.size() > 1)
                groups.push_back(std::move(g));
        }
        return groups;
    }

    SystemConfig perturb_coincident_powers(const SystemConfig &config, double epsilon_rel)
    {
        if (!(epsilon_rel > 0.0))
            throw InvalidParameter("epsilon_rel must be positive");
        SystemConfig out = config;
        auto &p = out.desired.entries;
        // A shifted value can land on another group; repeat until distinct.
        for (int pass = 0; pass < 8; ++pass)
        {
            const auto groups = coincident_groups(p);
            if (groups.empty())
                return out;
            for (const auto &g : groups)
            {
                const double base = p[g.front()];
                for (std::size_t j = 1; j < g.size(); ++j)
                    p[g[j]] = base * (1.0 + double(j) * epsilon_rel);
            }
        }
        if (!coincident_groups(p).empty())
            throw InvalidParameter("could not separate coincident desired powers");
        return out;
    }

    ScenarioParams reference_scenario(int index, double rho_db)
    {
        if (index < 1 || index > reference_scenario_count)
            throw InvalidParameter("reference scenario index must be in 1..20");
        const double lo = 1.0 / 65.0, hi = 65.0;
        // alpha pairs repeat in blocks of five: (lo,lo) (lo,1) (lo,hi) (1,1) (1,lo)
        static const double ad[5] = {lo, lo, lo, 1.0, 1.0};
        static const double ai[5] = {lo, 1.0, hi, 1.0, lo};
        static const double vs[4] = {1.0, 10.0, 30.0, 20.0};
        const int block = (index - 1) / 5, pos = (index - 1) % 5;

        ScenarioParams p;
        p.rho_db = rho_db;
        p.varsigma = vs[block];
        p.alpha_desired = ad[pos];
        p.alpha_interferer = ai[pos];
        if (block == 3)
        {
            p.n_r = 6;
            p.antennas_per_site = 2;
        }
        return p;
    }
}
