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

// Link-level Monte Carlo simulator. Deliberately independent of the analytic modules: it only uses
// the power matrices and the constellation points.

#ifndef MACROMRC_MCSIM_HPP
#define MACROMRC_MCSIM_HPP

#include "macromrc/gamma_dist.hpp"
#include "macromrc/modulation.hpp"
#include "macromrc/power_model.hpp"

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <boost/random/normal_distribution.hpp>

#include <random>
#include <string>
#include <vector>

namespace macromrc
{
    using cvec = std::vector<std::complex<double>>;

    // mt19937_64 keyed by (seed, stream) through std::seed_seq.
    class Rng
    {
    public:
        Rng(std::uint64_t seed, std::uint64_t stream = 0);

        double normal() { return normal_(engine_); }
        // uniform on {0, ..., n-1}
        std::size_t index(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_); }
        std::mt19937_64 &engine() { return engine_; }

        static constexpr const char *algorithm = "mt19937_64 seeded by seed_seq(seed, stream), ziggurat normals";

    private:
        std::mt19937_64 engine_;
        boost::random::normal_distribution<double> normal_{0.0, 1.0}; // ziggurat
    };

    struct ChannelSample
    {
        std::vector<cvec> h_columns; // desired source first, then interferers; each of length n_R
        cvec noise;
    };

    // h_ik = sqrt(P_ik / 2) (g1 + j g2), noise_i = sqrt(sigma^2 / 2) (g1 + j g2)
    ChannelSample generate_channel(const SystemConfig &config, Rng &rng);

    // h1^H r / (h1^H h1). Throws DegenerateChannelError when h1 = 0.
    std::complex<double> mrc_combine(const cvec &h1, const cvec &r);

    struct SerEstimate
    {
        double ser = 0.0;
        double std_err = 0.0;
        std::uint64_t n_symbols = 0;
        std::uint64_t n_errors = 0;
        std::uint64_t seed = 0;
        std::size_t substreams = 0;
        std::string rng = Rng::algorithm;
    };

    struct SimulationOptions
    {
        std::size_t threads = 0;     // 0: MACROMRC_THREADS or the hardware concurrency
        std::size_t substreams = 64; // fixes the random streams; results do not depend on threads
    };

    std::size_t default_thread_count();

    // Uniform i.i.d. desired and interferer symbols, MRC, nearest-point detection.
    SerEstimate simulate_ser(const SystemConfig &config, const Modulation &modulation, std::uint64_t n_symbols,
                             std::uint64_t seed, const SimulationOptions &options = {});

    // gamma = X^2 / Y with X = h1^H h1 and Y = h1^H D h1 for the given magnitude profile.
    std::vector<double> sample_gamma(const SystemConfig &config, const InterfererMagnitudeProfile &profile,
                                     std::size_t n, std::uint64_t seed);

    namespace detail
    {
        // Runs body(stream, count) for every substream on a small thread pool.
        void for_each_substream(std::uint64_t total, std::size_t substreams, std::size_t threads,
                                const std::function<void(std::size_t, std::uint64_t)> &body);
    }
}

#endif
