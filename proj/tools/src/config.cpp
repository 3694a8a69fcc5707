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

#include "macromrc_cli/app.hpp"
#include "macromrc/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace macromrc::cli
{
    namespace
    {
        std::string where(const std::string &source, const YAML::Node &node, const std::string &field)
        {
            const auto m = node.Mark();
            std::ostringstream os;
            os << source;
            if (!m.is_null())
                os << ':' << m.line + 1 << ':' << m.column + 1;
            os << " (" << field << ')';
            return os.str();
        }

        // Plain numbers plus "inf", "-inf" and fractions such as "1/65".
        double parse_number(std::string s, const std::string &loc)
        {
            const auto b = s.find_first_not_of(" \t"), e = s.find_last_not_of(" \t");
            s = b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
            auto one = [&](const std::string &t)
            {
                errno = 0;
                char *end = nullptr;
                const double v = std::strtod(t.c_str(), &end);
                if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
                    throw ConfigError(loc, "expected a number, got '" + s + "'");
                return v;
            };
            if (s == ".inf" || s == "+.inf")
                return std::numeric_limits<double>::infinity();
            if (s == "-.inf")
                return -std::numeric_limits<double>::infinity();
            const auto slash = s.find('/');
            if (slash == std::string::npos)
                return one(s);
            const double den = one(s.substr(slash + 1));
            if (den == 0.0)
                throw ConfigError(loc, "zero denominator in '" + s + "'");
            return one(s.substr(0, slash)) / den;
        }

        double number(const YAML::Node &n, const std::string &source, const std::string &field)
        {
            const auto loc = where(source, n, field);
            if (!n.IsScalar())
                throw ConfigError(loc, "expected a scalar number");
            return parse_number(n.Scalar(), loc);
        }

        std::vector<double> vector(const YAML::Node &n, const std::string &source, const std::string &field)
        {
            if (!n.IsSequence())
                throw ConfigError(where(source, n, field), "expected a list of numbers");
            std::vector<double> v;
            for (std::size_t i = 0; i < n.size(); ++i)
                v.push_back(number(n[i], source, field + "[" + std::to_string(i) + "]"));
            return v;
        }

        std::uint64_t count(const YAML::Node &n, const std::string &source, const std::string &field)
        {
            const double v = number(n, source, field);
            if (!(v >= 0.0) || v != std::floor(v) || v > 1.8e19)
                throw ConfigError(where(source, n, field), "expected a non-negative integer");
            return std::uint64_t(v);
        }

        int scenario_index(const YAML::Node &n, const std::string &source)
        {
            const auto loc = where(source, n, "scenario");
            if (!n.IsScalar())
                throw ConfigError(loc, "expected a scenario name such as S4");
            std::string s = n.Scalar();
            if (!s.empty() && (s[0] == 'S' || s[0] == 's'))
                s = s.substr(1);
            const double v = parse_number(s, loc);
            if (v != std::floor(v) || v < 1 || v > reference_scenario_count)
                throw ConfigError(loc, "unknown scenario '" + n.Scalar() + "' (S1 to S20)");
            return int(v);
        }

        LoadedConfig from_node(YAML::Node root, const std::string &source)
        {
            if (!root.IsMap())
                throw ConfigError(source, "top level must be a key/value mapping");

            LoadedConfig lc;
            lc.source = source;
            if (root["resolved_config"])
            {
                // a run manifest: the config block plus the run settings
                const YAML::Node m = root;
                root.reset(m["resolved_config"]); // rebind; operator= would overwrite the document
                if (!root.IsMap())
                    throw ConfigError(where(source, root, "resolved_config"), "expected a mapping");
                if (m["rho_grid"])
                    lc.rho_grid = vector(m["rho_grid"], source, "rho_grid");
                if (m["symbols"] && !m["symbols"].IsNull())
                    lc.symbols = count(m["symbols"], source, "symbols");
                if (m["seed"] && !m["seed"].IsNull())
                    lc.seed = count(m["seed"], source, "seed");
                if (m["substreams"] && !m["substreams"].IsNull())
                    lc.substreams = std::size_t(count(m["substreams"], source, "substreams"));
                if (m["corrupt_analytic"] && !m["corrupt_analytic"].IsNull())
                    lc.corrupt_analytic = number(m["corrupt_analytic"], source, "corrupt_analytic");
            }

            static const std::set<std::string> known = {
                "n_R", "modulation", "scenario", "rho_db", "varsigma", "alpha_desired", "alpha_interferer",
                "trace_norm", "antennas_per_site", "desired", "interferers", "sigma2", "perturb_epsilon_rel"};
            for (const auto &kv : root)
            {
                const auto key = kv.first.as<std::string>();
                if (!known.count(key))
                    throw ConfigError(where(source, kv.first, key), "unknown key '" + key + "'");
            }

            auto opt = [&](const char *key) -> std::optional<double>
            {
                const auto n = root[key];
                if (!n || n.IsNull())
                    return std::nullopt;
                return number(n, source, key);
            };

            if (root["modulation"] && !root["modulation"].IsNull())
                lc.modulation = root["modulation"].as<std::string>();
            lc.perturb_epsilon_rel = opt("perturb_epsilon_rel");
            if (lc.perturb_epsilon_rel && !(*lc.perturb_epsilon_rel > 0.0 && *lc.perturb_epsilon_rel < 0.1))
                throw ConfigError(where(source, root["perturb_epsilon_rel"], "perturb_epsilon_rel"),
                                  "must lie in (0, 0.1)");
            lc.rho_db = opt("rho_db");
            const auto sigma2 = opt("sigma2");
            const auto n_r = opt("n_R");

            const bool explicit_powers = bool(root["desired"]);
            const bool scenario_form = root["varsigma"] || root["alpha_desired"] || root["alpha_interferer"] ||
                                       root["trace_norm"] || root["antennas_per_site"];
            if (root["interferers"] && !explicit_powers)
                throw ConfigError(where(source, root["interferers"], "interferers"), "interferers given without desired");

            if (root["scenario"])
            {
                if (explicit_powers)
                    throw ConfigError(where(source, root["desired"], "desired"),
                                      "explicit powers cannot be combined with a built-in scenario");
                lc.scenario_index = scenario_index(root["scenario"], source);
                ScenarioParams p = reference_scenario(*lc.scenario_index, lc.rho_db.value_or(20.0));
                if (auto v = opt("varsigma"))
                    p.varsigma = *v;
                if (auto v = opt("alpha_desired"))
                    p.alpha_desired = *v;
                if (auto v = opt("alpha_interferer"))
                    p.alpha_interferer = *v;
                if (auto v = opt("trace_norm"))
                    p.trace_norm = *v;
                if (n_r && std::size_t(*n_r) != p.n_r)
                    throw ConfigError(where(source, root["n_R"], "n_R"), "does not match the built-in scenario");
                lc.scenario = p;
                // built-in scenarios with co-located or equal-power antennas are evaluated by perturbation
                if (!lc.perturb_epsilon_rel)
                    lc.perturb_epsilon_rel = 1e-5;
                if (lc.modulation.empty())
                    lc.modulation = *lc.scenario_index <= 10 ? "bpsk" : "qpsk";
            }
            else if (explicit_powers)
            {
                if (scenario_form)
                    throw ConfigError(where(source, root["desired"], "desired"),
                                      "give either explicit powers or scenario parameters, not both");
                lc.config.desired.entries = vector(root["desired"], source, "desired");
                lc.config.desired.source_id = "desired";
                if (const auto ints = root["interferers"]; ints && !ints.IsNull())
                {
                    if (!ints.IsSequence())
                        throw ConfigError(where(source, ints, "interferers"), "expected a list of power lists");
                    for (std::size_t k = 0; k < ints.size(); ++k)
                    {
                        PowerMatrix m;
                        m.entries = vector(ints[k], source, "interferers[" + std::to_string(k) + "]");
                        m.source_id = "interferer " + std::to_string(k + 1);
                        if (m.entries.size() != lc.config.desired.entries.size())
                            throw ConfigError(where(source, ints[k], "interferers[" + std::to_string(k) + "]"),
                                              "length differs from desired");
                        lc.config.interferers.push_back(std::move(m));
                    }
                }
                if (n_r && std::size_t(*n_r) != lc.config.desired.entries.size())
                    throw ConfigError(where(source, root["n_R"], "n_R"), "does not match the length of desired");
            }
            else if (scenario_form)
            {
                ScenarioParams p;
                p.rho_db = lc.rho_db.value_or(20.0);
                p.varsigma = opt("varsigma").value_or(1.0);
                p.alpha_desired = opt("alpha_desired").value_or(1.0);
                p.alpha_interferer = opt("alpha_interferer").value_or(1.0);
                p.trace_norm = opt("trace_norm");
                if (n_r)
                {
                    if (*n_r < 1 || *n_r != std::floor(*n_r))
                        throw ConfigError(where(source, root["n_R"], "n_R"), "must be a positive integer");
                    p.n_r = std::size_t(*n_r);
                }
                if (auto v = opt("antennas_per_site"))
                    p.antennas_per_site = std::size_t(*v);
                lc.scenario = p;
            }
            else
                throw ConfigError(source, "no powers given: set desired/interferers, scenario parameters or scenario");

            try
            {
                if (lc.scenario)
                {
                    lc.config = scenario_to_config(*lc.scenario);
                    if (sigma2)
                        lc.config.noise_power = *sigma2;
                }
                else if (sigma2)
                    lc.config.noise_power = *sigma2;
                else if (lc.rho_db)
                    lc.config = lc.config.with_rho_db(*lc.rho_db);
                lc.config.validate();
            }
            catch (const InvalidParameter &e)
            {
                throw ConfigError(source, e.what());
            }
            return lc;
        }
    }

    LoadedConfig load_config_text(const std::string &text, const std::string &source)
    {
        YAML::Node root;
        try
        {
            root = YAML::Load(text);
        }
        catch (const YAML::ParserException &e)
        {
            std::ostringstream os;
            os << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1;
            throw ConfigError(os.str(), e.msg);
        }
        try
        {
            return from_node(root, source);
        }
        catch (const YAML::Exception &e)
        {
            std::ostringstream os;
            os << source << ':' << e.mark.line + 1 << ':' << e.mark.column + 1;
            throw ConfigError(os.str(), e.msg);
        }
    }

    LoadedConfig load_config_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError(path, "cannot open config file");
        std::stringstream ss;
        ss << in.rdbuf();
        return load_config_text(ss.str(), path);
    }

    std::vector<double> parse_rho_grid(const std::string &spec)
    {
        std::vector<double> out;
        if (spec.find_first_not_of(" \t") == std::string::npos)
            return out;
        auto num = [&](const std::string &t) { return parse_number(t, "--rho-grid"); };
        if (spec.find(':') != std::string::npos)
        {
            std::vector<std::string> parts;
            std::stringstream ss(spec);
            for (std::string p; std::getline(ss, p, ':');)
                parts.push_back(p);
            if (parts.size() != 3)
                throw ConfigError("--rho-grid", "range form is start:step:stop");
            const double a = num(parts[0]), step = num(parts[1]), b = num(parts[2]);
            if (!(step > 0.0) || !(b >= a) || !std::isfinite(a) || !std::isfinite(b))
                throw ConfigError("--rho-grid", "need a positive step and start <= stop");
            const auto n = std::size_t(std::floor((b - a) / step + 1e-9));
            if (n > 100000)
                throw ConfigError("--rho-grid", "too many points");
            for (std::size_t i = 0; i <= n; ++i)
                out.push_back(a + double(i) * step);
            return out;
        }
        std::stringstream ss(spec);
        for (std::string p; std::getline(ss, p, ',');)
            out.push_back(num(p));
        return out;
    }
}
