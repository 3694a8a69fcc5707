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

#ifndef MACROMRC_CLI_APP_HPP
#define MACROMRC_CLI_APP_HPP

#include "macromrc/power_model.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace macromrc::cli
{
    enum ExitCode : int
    {
        exit_ok = 0,
        exit_failure = 1, // accuracy or I/O trouble not covered below
        exit_usage = 2,
        exit_degenerate = 3,
        exit_validation = 4,
        exit_undefined = 5,
    };

    // Malformed or inconsistent configuration; `where` is "file:line:column" or a field path.
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string &where, const std::string &what)
            : std::runtime_error(where + ": " + what), where(where) {}
        std::string where;
    };

    struct LoadedConfig
    {
        SystemConfig config;                // sigma^2 resolved from sigma2 / rho_db (0 when neither is given)
        std::optional<ScenarioParams> scenario; // set when powers come from the (rho, varsigma, alpha) form
        std::optional<int> scenario_index;  // built-in S1..S20 shortcut
        std::optional<double> rho_db;
        std::string modulation;             // empty: not given
        std::optional<double> perturb_epsilon_rel;

        // Run settings stored by a manifest; used as defaults when the config is a manifest.
        std::optional<std::vector<double>> rho_grid;
        std::optional<std::uint64_t> symbols;
        std::optional<std::uint64_t> seed;
        std::optional<std::size_t> substreams;
        std::optional<double> corrupt_analytic;
        std::string source;
    };

    LoadedConfig load_config_file(const std::string &path);
    LoadedConfig load_config_text(const std::string &text, const std::string &source = "<string>");

    // "a:step:b" (inclusive), "a,b,c", a single value, or "" for an empty grid.
    std::vector<double> parse_rho_grid(const std::string &spec);

    // Printed table values used by `reproduce`.
    struct PrintedRow
    {
        int scenario;
        double m_p_db;
        double floor;
    };
    const std::vector<PrintedRow> &printed_rows();
    std::optional<PrintedRow> printed_row(int scenario);

    // Entry point; returns the process exit code.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
}

#endif
