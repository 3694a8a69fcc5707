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

#include "macromrc/mcsim.hpp"
#include "macromrc/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <thread>

namespace macromrc
{
    Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    {
        std::seed_seq seq{std::uint32_t(seed), std::uint32_t(seed >> 32), std::uint32_t(stream),
                          std::uint32_t(stream >> 32), std::uint32_t(0x6d726363)};
        engine_.seed(seq);
    }

    std::size_t default_thread_count()
    {
        if (const char *env = std::getenv("MACROMRC_THREADS"))
        {
            char *end = nullptr;
            const long v = std::strtol(env, &end, 10);
            if (end != env && v > 0)
                return std::size_t(v);
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    ChannelSample generate_channel(const SystemConfig &config, Rng &rng)
    {
        const std::size_t n = config.n_r();
        ChannelSample s;
        auto column = [&](const PowerMatrix &m)
        {
            cvec h(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                if (m.entries[i] == 0.0)
                    continue;
                const double sd = std::sqrt(m.entries[i] / 2.0);
                const double re = rng.normal(), im = rng.normal();
                h[i] = {sd * re, sd * im};
            }
            return h;
        };
        s.h_columns.push_back(column(config.desired));
        for (const auto &m : config.interferers)
            s.h_columns.push_back(column(m));
        s.noise.resize(n);
        const double sd = std::sqrt(config.noise_power / 2.0);
        for (std::size_t i = 0; i < n; ++i)
        {
            if (config.noise_power == 0.0)
                break;
            const double re = rng.normal(), im = rng.normal();
            s.noise[i] = {sd * re, sd * im};
        }
        return s;
    }

    std::complex<double> mrc_combine(const cvec &h1, const cvec &r)
    {
        if (h1.size() != r.size())
            throw InvalidParameter("channel and received vectors differ in length");
        std::complex<double> num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < h1.size(); ++i)
        {
            num += std::conj(h1[i]) * r[i];
            den += std::norm(h1[i]);
        }
        if (den == 0.0)
            throw DegenerateChannelError("desired channel vector is zero");
        return num / den;
    }

    namespace detail
    {
        void for_each_substream(std::uint64_t total, std::size_t substreams, std::size_t threads,
                                const std::function<void(std::size_t, std::uint64_t)> &body)
        {
            if (substreams == 0)
                substreams = 1;
            if (threads == 0)
                threads = default_thread_count();
            threads = std::min(threads, substreams);
            std::atomic<std::size_t> next{0};
            auto work = [&]
            {
                for (std::size_t s; (s = next.fetch_add(1)) < substreams;)
                {
                    const std::uint64_t count = total / substreams + (s < total % substreams ? 1 : 0);
                    body(s, count);
                }
            };
            if (threads <= 1)
            {
                work();
                return;
            }
            std::vector<std::thread> pool;
            for (std::size_t t = 0; t < threads; ++t)
                pool.emplace_back(work);
            for (auto &th : pool)
                th.join();
        }
    }

    namespace
    {
        // Nearest-point slicer on the constellation grid; returns the point index.
        struct Slicer
        {
            bool bpsk;
            unsigned side;
            double scale;

            explicit Slicer(const Modulation &m)
            {
                bpsk = m.kind == ModulationKind::bpsk;
                side = unsigned(std::lround(std::sqrt(double(m.order))));
                scale = bpsk ? 1.0 : 1.0 / std::sqrt(2.0 * (double(m.order) - 1.0) / 3.0);
            }

            unsigned axis(double v) const
            {
                const double t = std::round((v / scale + (side - 1.0)) / 2.0);
                return unsigned(std::clamp(t, 0.0, double(side - 1)));
            }

            std::size_t operator()(std::complex<double> z) const
            {
                if (bpsk)
                    return z.real() >= 0.0 ? 1 : 0;
                return std::size_t(axis(z.real())) * side + axis(z.imag());
            }
        };
    }

    SerEstimate simulate_ser(const SystemConfig &config, const Modulation &modulation, std::uint64_t n_symbols,
                             std::uint64_t seed, const SimulationOptions &options)
    {
        config.validate();
        if (n_symbols == 0)
            throw InvalidParameter("n_symbols must be at least 1");
        const auto points = modulation.constellation();
        const Slicer slice(modulation);
        const std::size_t n = config.n_r(), n_int = config.interferers.size();
        const std::size_t S = std::max<std::size_t>(1, options.substreams);

        std::vector<double> sd1(n), sdn(n_int * n);
        for (std::size_t i = 0; i < n; ++i)
            sd1[i] = std::sqrt(config.desired.entries[i] / 2.0);
        for (std::size_t k = 0; k < n_int; ++k)
            for (std::size_t i = 0; i < n; ++i)
                sdn[k * n + i] = std::sqrt(config.interferers[k].entries[i] / 2.0);
        const double sdz = std::sqrt(config.noise_power / 2.0);

        std::vector<std::uint64_t> errors(S, 0);
        detail::for_each_substream(n_symbols, S, options.threads,
                                   [&](std::size_t s, std::uint64_t count)
                                   {
                                       Rng rng(seed, s);
                                       cvec h1(n), r(n);
                                       std::uint64_t err = 0;
                                       for (std::uint64_t t = 0; t < count; ++t)
                                       {
                                           const std::size_t tx = rng.index(points.size());
                                           for (std::size_t i = 0; i < n; ++i)
                                           {
                                               const double re = rng.normal(), im = rng.normal();
                                               h1[i] = {sd1[i] * re, sd1[i] * im};
                                               r[i] = h1[i] * points[tx];
                                           }
                                           for (std::size_t k = 0; k < n_int; ++k)
                                           {
                                               const auto sk = points[rng.index(points.size())];
                                               for (std::size_t i = 0; i < n; ++i)
                                               {
                                                   const double re = rng.normal(), im = rng.normal();
                                                   r[i] += std::complex<double>(sdn[k * n + i] * re, sdn[k * n + i] * im) * sk;
                                               }
                                           }
                                           if (sdz > 0.0)
                                               for (std::size_t i = 0; i < n; ++i)
                                               {
                                                   const double re = rng.normal(), im = rng.normal();
                                                   r[i] += std::complex<double>(sdz * re, sdz * im);
                                               }
                                           if (slice(mrc_combine(h1, r)) != tx)
                                               ++err;
                                       }
                                       errors[s] = err;
                                   });

        SerEstimate e;
        e.seed = seed;
        e.substreams = S;
        e.n_symbols = n_symbols;
        for (auto v : errors)
            e.n_errors += v;
        e.ser = double(e.n_errors) / double(n_symbols);
        e.std_err = std::sqrt(e.ser * (1.0 - e.ser) / double(n_symbols));
        return e;
    }

    std::vector<double> sample_gamma(const SystemConfig &config, const InterfererMagnitudeProfile &profile,
                                     std::size_t n, std::uint64_t seed)
    {
        config.validate();
        if (profile.magnitudes.size() != config.interferers.size())
            throw InvalidParameter("magnitude profile length differs from the interferer count");
        const std::size_t nr = config.n_r();
        std::vector<double> d(nr, config.noise_power);
        for (std::size_t k = 0; k < config.interferers.size(); ++k)
            for (std::size_t i = 0; i < nr; ++i)
                d[i] += profile.magnitudes[k] * config.interferers[k].entries[i];

        std::vector<double> out;
        out.reserve(n);
        Rng rng(seed, 0);
        for (std::size_t t = 0; t < n; ++t)
        {
            double X = 0.0, Y = 0.0;
            for (std::size_t i = 0; i < nr; ++i)
            {
                const double re = rng.normal(), im = rng.normal();
                const double x = config.desired.entries[i] / 2.0 * (re * re + im * im);
                X += x;
                Y += d[i] * x;
            }
            out.push_back(X * X / Y);
        }
        return out;
    }
}
