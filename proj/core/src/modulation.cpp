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

#include "macromrc/modulation.hpp"
#include "macromrc/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>

namespace macromrc
{
    namespace
    {
        unsigned isqrt(unsigned m)
        {
            unsigned r = unsigned(std::lround(std::sqrt(double(m))));
            return r * r == m ? r : 0;
        }

        double log_binomial(double n, double k)
        {
            return std::lgamma(n + 1) - std::lgamma(k + 1) - std::lgamma(n - k + 1);
        }

        // Indices of identical interferer matrices, grouped.
        std::vector<std::vector<std::size_t>> identical_groups(const SystemConfig &config)
        {
            std::vector<std::vector<std::size_t>> groups;
            for (std::size_t k = 0; k < config.interferers.size(); ++k)
            {
                bool placed = false;
                for (auto &g : groups)
                    if (config.interferers[g.front()].entries == config.interferers[k].entries)
                    {
                        g.push_back(k);
                        placed = true;
                        break;
                    }
                if (!placed)
                    groups.push_back({k});
            }
            return groups;
        }

        // All level-count vectors c with sum c = m over L levels, in lexicographic order.
        void multisets(std::size_t levels, std::size_t m, std::vector<std::size_t> &cur,
                       std::vector<std::vector<std::size_t>> &out)
        {
            if (cur.size() + 1 == levels)
            {
                cur.push_back(m);
                out.push_back(cur);
                cur.pop_back();
                return;
            }
            for (std::size_t c = m + 1; c-- > 0;)
            {
                cur.push_back(c);
                multisets(levels, m - c, cur, out);
                cur.pop_back();
            }
        }
    }

    std::vector<std::complex<double>> Modulation::constellation() const
    {
        std::vector<std::complex<double>> pts;
        if (kind == ModulationKind::bpsk)
            return {{-1.0, 0.0}, {1.0, 0.0}};
        const unsigned side = isqrt(order);
        const double scale = 1.0 / std::sqrt(2.0 * (double(order) - 1.0) / 3.0);
        for (unsigned ix = 0; ix < side; ++ix)
            for (unsigned iy = 0; iy < side; ++iy)
            {
                const double x = 2.0 * ix - (side - 1.0), y = 2.0 * iy - (side - 1.0);
                pts.emplace_back(x * scale, y * scale);
            }
        return pts;
    }

    Modulation bpsk()
    {
        Modulation m;
        m.kind = ModulationKind::bpsk;
        m.order = 2;
        m.name = "bpsk";
        m.ser_terms = {{1.0, 2.0, false}};
        m.magnitude_levels = {{1.0, 1.0}};
        return m;
    }

    Modulation square_qam(unsigned order)
    {
        const unsigned side = isqrt(order);
        if (order < 4 || side == 0)
            throw InvalidParameter("square QAM needs M = 4, 16, 64, ...");
        Modulation m;
        m.kind = order == 4 ? ModulationKind::qpsk : ModulationKind::square_qam;
        m.order = order;
        m.name = order == 4 ? "qpsk" : std::to_string(order) + "qam";
        const double r = 1.0 - 1.0 / double(side);
        const double b = 3.0 / (double(order) - 1.0);
        m.ser_terms = {{4.0 * r, b, false}, {4.0 * r * r, b, true}};

        // |s|^2 grouped by the exact integer x^2 + y^2 on the odd-integer grid
        std::map<int, unsigned> count;
        for (unsigned ix = 0; ix < side; ++ix)
            for (unsigned iy = 0; iy < side; ++iy)
            {
                const int x = int(2 * ix) - int(side - 1), y = int(2 * iy) - int(side - 1);
                ++count[x * x + y * y];
            }
        const double norm = 2.0 * (double(order) - 1.0) / 3.0;
        for (const auto &[e, c] : count)
            m.magnitude_levels.push_back({double(e) / norm, double(c) / double(order)});
        return m;
    }

    Modulation qpsk() { return square_qam(4); }

    Modulation modulation_from_name(const std::string &name)
    {
        std::string s;
        for (char ch : name)
            if (std::isalnum(static_cast<unsigned char>(ch)))
                s.push_back(char(std::tolower(static_cast<unsigned char>(ch))));
        if (s == "bpsk")
            return bpsk();
        if (s == "qpsk" || s == "4qam" || s == "qam4")
            return qpsk();
        std::string digits;
        if (s.size() > 3 && s.substr(s.size() - 3) == "qam")
            digits = s.substr(0, s.size() - 3);
        else if (s.size() > 3 && s.substr(0, 3) == "qam")
            digits = s.substr(3);
        if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit) && digits.size() < 8)
            return square_qam(unsigned(std::stoul(digits)));
        throw InvalidParameter("unknown modulation '" + name + "' (expected bpsk, qpsk or <M>qam)");
    }

    double profile_count(const Modulation &mod, const SystemConfig &config)
    {
        const double L = double(mod.magnitude_levels.size());
        double logc = 0.0;
        for (const auto &g : identical_groups(config))
            logc += log_binomial(L + double(g.size()) - 1.0, double(g.size()));
        return std::round(std::exp(logc));
    }

    std::vector<InterfererMagnitudeProfile> enumerate_profiles(const Modulation &mod, const SystemConfig &config,
                                                               std::size_t cap)
    {
        const double count = profile_count(mod, config);
        if (count > double(cap))
            throw CombinatorialBlowupError("interferer magnitude enumeration has " + std::to_string(count) +
                                           " profiles, above the cap of " + std::to_string(cap) +
                                           "; merge identical interferers or raise the cap");

        const auto &lv = mod.magnitude_levels;
        const std::size_t n_int = config.interferers.size();
        std::vector<InterfererMagnitudeProfile> out{{std::vector<double>(n_int, 1.0), 1.0}};
        for (const auto &g : identical_groups(config))
        {
            std::vector<std::vector<std::size_t>> ms;
            std::vector<std::size_t> cur;
            multisets(lv.size(), g.size(), cur, ms);

            std::vector<InterfererMagnitudeProfile> next;
            next.reserve(out.size() * ms.size());
            for (const auto &base : out)
                for (const auto &c : ms)
                {
                    // multinomial m! / prod c_j! * prod p_j^c_j
                    double logw = std::lgamma(double(g.size()) + 1.0);
                    auto prof = base;
                    std::size_t slot = 0;
                    for (std::size_t j = 0; j < lv.size(); ++j)
                    {
                        logw += double(c[j]) * std::log(lv[j].probability) - std::lgamma(double(c[j]) + 1.0);
                        for (std::size_t t = 0; t < c[j]; ++t)
                            prof.magnitudes[g[slot++]] = lv[j].magnitude;
                    }
                    prof.probability *= std::exp(logw);
                    next.push_back(std::move(prof));
                }
            out = std::move(next);
        }
        return out;
    }
}
