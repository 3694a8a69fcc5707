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
#include "macromrc/mcsim.hpp"
#include "macromrc/metrics.hpp"
#include "macromrc/ser_analytic.hpp"
#include "macromrc/version.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

namespace macromrc::cli
{
    namespace
    {
        namespace fs = std::filesystem;
        using json = nlohmann::ordered_json;

        constexpr double default_epsilon = 1e-5;

        std::string g17(double v)
        {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            return buf;
        }

        std::string timestamp()
        {
            std::time_t t = std::time(nullptr);
            if (const char *e = std::getenv("SOURCE_DATE_EPOCH"))
                t = std::time_t(std::strtoll(e, nullptr, 10));
            std::tm tm{};
            gmtime_r(&t, &tm);
            char buf[32];
            std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
            return buf;
        }

        json config_json(const SystemConfig &c, const std::string &modulation, std::optional<double> eps)
        {
            json j;
            j["n_R"] = c.n_r();
            j["desired"] = c.desired.entries;
            json ints = json::array();
            for (const auto &m : c.interferers)
                ints.push_back(m.entries);
            j["interferers"] = ints;
            j["sigma2"] = c.noise_power;
            j["modulation"] = modulation;
            if (eps)
                j["perturb_epsilon_rel"] = *eps;
            return j;
        }

        struct Common
        {
            std::string config_path;
            std::string modulation;
            std::string rho_grid;
            std::string out;
            std::string perturb; // empty with the flag present: default epsilon
            CLI::Option *perturb_opt = nullptr;
            CLI::Option *grid_opt = nullptr;
            CLI::Option *modulation_opt = nullptr;
            std::size_t threads = 0;
        };

        void add_config(CLI::App *sc, Common &c)
        {
            sc->add_option("--config,-c", c.config_path, "YAML config (or a run manifest)")->required();
        }
        void add_modulation(CLI::App *sc, Common &c)
        {
            c.modulation_opt = sc->add_option("--modulation,-m", c.modulation, "bpsk, qpsk or <M>qam");
        }
        void add_perturb(CLI::App *sc, Common &c)
        {
            c.perturb_opt = sc->add_option("--perturb", c.perturb,
                                           "separate coincident powers by this relative amount (default 1e-5)")
                                ->expected(0, 1);
        }

        double parse_perturb(const std::string &s)
        {
            if (s.empty())
                return default_epsilon;
            std::vector<double> g;
            try
            {
                g = parse_rho_grid(s); // plain number parsing
            }
            catch (const ConfigError &)
            {
                throw ConfigError("--perturb", "expected a number, got '" + s + "'");
            }
            if (g.size() != 1 || !(g[0] > 0.0 && g[0] < 0.1))
                throw ConfigError("--perturb", "must be one number in (0, 0.1)");
            return g[0];
        }

        struct Context
        {
            LoadedConfig lc;
            Modulation mod;
            std::optional<double> eps;
            AnalysisOptions options;
        };

        Context resolve(const Common &c)
        {
            Context ctx;
            ctx.lc = load_config_file(c.config_path);
            std::string name = c.modulation_opt && c.modulation_opt->count() ? c.modulation : ctx.lc.modulation;
            if (name.empty())
                name = "bpsk";
            try
            {
                ctx.mod = modulation_from_name(name);
            }
            catch (const InvalidParameter &e)
            {
                throw ConfigError("modulation", e.what());
            }
            if (c.perturb_opt && c.perturb_opt->count())
                ctx.eps = parse_perturb(c.perturb);
            else
                ctx.eps = ctx.lc.perturb_epsilon_rel;
            ctx.options.perturb_epsilon_rel = ctx.eps;
            return ctx;
        }

        std::vector<double> resolve_grid(const Common &c, const Context &ctx)
        {
            if (c.grid_opt && c.grid_opt->count())
                return parse_rho_grid(c.rho_grid);
            if (ctx.lc.rho_grid)
                return *ctx.lc.rho_grid;
            return parse_rho_grid("0:5:40");
        }

        SystemConfig config_at(const LoadedConfig &lc, double rho_db)
        {
            if (lc.scenario)
            {
                auto p = *lc.scenario;
                p.rho_db = rho_db;
                return scenario_to_config(p);
            }
            return lc.config.with_rho_db(rho_db);
        }

        // Unperturbed reference config, the one recorded in manifests.
        SystemConfig reference_config(const LoadedConfig &lc)
        {
            return lc.scenario ? scenario_to_config(*lc.scenario) : lc.config;
        }

        void write_file(const std::string &path, const std::string &text)
        {
            const fs::path p(path);
            if (p.has_parent_path())
                fs::create_directories(p.parent_path());
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw std::runtime_error("cannot write " + path);
            f << text;
            if (!f)
                throw std::runtime_error("write failed for " + path);
        }

        json manifest_base(const std::string &command, const std::vector<std::string> &argv, const Context &ctx)
        {
            json m;
            m["command"] = command;
            m["argv"] = argv;
            m["tool_version"] = version_string;
            m["timestamp"] = timestamp();
            m["config_source"] = ctx.lc.source;
            if (ctx.lc.scenario_index)
                m["scenario"] = "S" + std::to_string(*ctx.lc.scenario_index);
            m["resolved_config"] = config_json(reference_config(ctx.lc), ctx.mod.name, ctx.eps);
            return m;
        }

        // ---------------------------------------------------------------- ser

        int cmd_ser(const Common &c, const std::vector<std::string> &argv, std::ostream &out)
        {
            const auto ctx = resolve(c);
            const auto grid = resolve_grid(c, ctx);
            std::ostringstream csv;
            csv << "rho_db,ser_analytic\n";
            for (double rho : grid)
                csv << g17(rho) << ',' << g17(ser(ctx.mod, config_at(ctx.lc, rho), ctx.options).value) << '\n';
            if (c.out.empty())
            {
                out << csv.str();
                return exit_ok;
            }
            write_file(c.out, csv.str());
            auto m = manifest_base("ser", argv, ctx);
            m["rho_grid"] = grid;
            m["outputs"] = {c.out};
            write_file(c.out + ".manifest.json", m.dump(2) + "\n");
            out << "wrote " << c.out << '\n';
            return exit_ok;
        }

        // ---------------------------------------------------------------- validate

        struct ValidateArgs
        {
            std::uint64_t symbols = 1000000;
            std::uint64_t seed = 1;
            std::size_t substreams = 64;
            double corrupt = 1.0;
            CLI::Option *symbols_opt = nullptr, *seed_opt = nullptr, *substreams_opt = nullptr, *corrupt_opt = nullptr;
        };

        int cmd_validate(const Common &c, const ValidateArgs &v, const std::vector<std::string> &argv,
                         std::ostream &out, std::ostream &err)
        {
            const auto ctx = resolve(c);
            const auto grid = resolve_grid(c, ctx);
            const std::uint64_t symbols = v.symbols_opt->count() ? v.symbols : ctx.lc.symbols.value_or(v.symbols);
            const std::uint64_t seed = v.seed_opt->count() ? v.seed : ctx.lc.seed.value_or(v.seed);
            const std::size_t substreams =
                v.substreams_opt->count() ? v.substreams : ctx.lc.substreams.value_or(v.substreams);
            const double corrupt = v.corrupt_opt->count() ? v.corrupt : ctx.lc.corrupt_analytic.value_or(1.0);
            if (symbols == 0)
            {
                err << "--symbols must be at least 1\n";
                return exit_usage;
            }
            if (substreams == 0)
            {
                err << "--substreams must be at least 1\n";
                return exit_usage;
            }

            SimulationOptions so;
            so.threads = c.threads;
            so.substreams = substreams;
            std::ostringstream csv;
            csv << "rho_db,ser_analytic,ser_mc,mc_stderr,z_score\n";
            bool ok = true;
            for (std::size_t j = 0; j < grid.size(); ++j)
            {
                const auto cfg = config_at(ctx.lc, grid[j]);
                const double a = ser(ctx.mod, cfg, ctx.options).value * corrupt;
                const auto e = simulate_ser(cfg, ctx.mod, symbols, seed + j, so);
                // with no observed errors the binomial standard error is taken at the analytic value
                double se = e.std_err;
                if (se == 0.0)
                    se = std::sqrt(std::max(a * (1.0 - a), 0.0) / double(symbols));
                const double z = se > 0.0 ? (e.ser - a) / se : (e.ser == a ? 0.0 : std::copysign(INFINITY, e.ser - a));
                if (!(std::abs(z) <= 3.0))
                    ok = false;
                csv << g17(grid[j]) << ',' << g17(a) << ',' << g17(e.ser) << ',' << g17(se) << ',' << g17(z) << '\n';
            }
            if (c.out.empty())
                out << csv.str();
            else
            {
                write_file(c.out, csv.str());
                auto m = manifest_base("validate", argv, ctx);
                m["rho_grid"] = grid;
                m["symbols"] = symbols;
                m["seed"] = seed;
                m["seed_rule"] = "grid point j uses seed + j";
                m["substreams"] = substreams;
                m["rng"] = Rng::algorithm;
                if (corrupt != 1.0)
                    m["corrupt_analytic"] = corrupt;
                m["outputs"] = {c.out};
                write_file(c.out + ".manifest.json", m.dump(2) + "\n");
                out << "wrote " << c.out << '\n';
            }
            if (!ok)
            {
                err << "validation failed: |z| > 3 at one or more grid points\n";
                return exit_validation;
            }
            return exit_ok;
        }

        // ---------------------------------------------------------------- floor / metric / outage

        int cmd_floor(const Common &c, std::ostream &out)
        {
            const auto ctx = resolve(c);
            const double f = error_floor(ctx.mod, reference_config(ctx.lc), ctx.options);
            out << "modulation=" << ctx.mod.name << '\n';
            out << "error_floor=" << g17(f) << '\n';
            out << "error_floor_db=" << g17(f > 0.0 ? 10.0 * std::log10(f) : -INFINITY) << '\n';
            return exit_ok;
        }

        int cmd_metric(const Common &c, std::ostream &out)
        {
            const auto ctx = resolve(c);
            const auto r = mean_sinr_metric(ctx.lc.config);
            out << "m_p_linear=" << g17(r.m_p_linear) << '\n';
            out << "m_p_db=" << g17(r.m_p_db) << '\n';
            out << "numerator=" << g17(r.numerator) << '\n';
            out << "denominator=" << g17(r.denominator) << '\n';
            return exit_ok;
        }

        int cmd_outage(const Common &c, double threshold_db, std::ostream &out)
        {
            const auto ctx = resolve(c);
            const auto &cfg = ctx.lc.config;
            double p = 0.0;
            if (threshold_db > -INFINITY)
                p = average_over_symbols([&](const InterfererMagnitudeProfile &prof)
                                         { return outage_probability(cfg, prof, threshold_db, true, ctx.options); },
                                         ctx.mod, cfg);
            out << "threshold_db=" << g17(threshold_db) << '\n';
            out << "threshold_linear=" << g17(std::pow(10.0, threshold_db / 10.0)) << '\n';
            out << "outage_probability=" << g17(p) << '\n';
            return exit_ok;
        }

        // ---------------------------------------------------------------- reproduce

        int cmd_reproduce(int table, int figure, const std::string &out_dir, const std::string &grid_spec,
                          std::optional<double> eps, const std::vector<std::string> &argv, std::ostream &out,
                          std::ostream &err)
        {
            int first = 0, last = 0;
            std::string label;
            if (table)
            {
                static const int lo[] = {1, 11, 16}, hi[] = {10, 15, 20};
                first = lo[table - 1];
                last = hi[table - 1];
                label = "table" + std::to_string(table);
            }
            else
            {
                first = 1 + 5 * (figure - 2);
                last = first + 4;
                label = "figure" + std::to_string(figure);
            }
            const auto grid = parse_rho_grid(grid_spec);
            AnalysisOptions opt;
            opt.perturb_epsilon_rel = eps.value_or(default_epsilon);

            std::ostringstream summary;
            summary << "scenario,modulation,varsigma,alpha_desired,alpha_interferer,n_R,m_p_db,m_p_db_printed,"
                       "m_p_dev_db,floor,floor_printed,floor_rel_dev,note\n";
            json outputs = json::array();
            json scen = json::array();
            out << std::left << std::setw(5) << "Sc." << std::setw(12) << "m_p (dB)" << std::setw(10) << "printed"
                << std::setw(14) << "floor" << std::setw(10) << "printed" << "rel.dev  note\n";
            for (int s = first; s <= last; ++s)
            {
                const auto mod = s <= 10 ? bpsk() : qpsk();
                const auto p20 = reference_scenario(s, 20.0);
                const auto cfg20 = scenario_to_config(p20);
                const double mp = mean_sinr_metric(cfg20).m_p_db;
                const double fl = error_floor(mod, cfg20, opt);
                const auto pr = printed_row(s);
                std::string note;
                if (s == 3)
                    note = "m_p disputed: the trace formula gives this value, not the printed one";
                if (figure)
                    note += std::string(note.empty() ? "" : "; ") + "figure axis SNR read as rho in dB";
                const double dev_db = mp - pr->m_p_db;
                const double dev_f = (fl - pr->floor) / pr->floor;
                summary << 'S' << s << ',' << mod.name << ',' << g17(p20.varsigma) << ',' << g17(p20.alpha_desired)
                        << ',' << g17(p20.alpha_interferer) << ',' << p20.n_r << ',' << g17(mp) << ','
                        << g17(pr->m_p_db) << ',' << g17(dev_db) << ',' << g17(fl) << ',' << g17(pr->floor) << ','
                        << g17(dev_f) << ',' << (note.empty() ? "" : "\"" + note + "\"") << '\n';
                char line[200];
                std::snprintf(line, sizeof line, "S%-4d%-12.4f%-10.2f%-14.6g%-10.3g%+-9.4f%s\n", s, mp, pr->m_p_db,
                              fl, pr->floor, dev_f, note.empty() ? "" : (s == 3 ? "m_p disputed" : "axis note"));
                out << line;

                std::ostringstream csv;
                csv << "rho_db,ser_analytic\n";
                for (const auto &[rho, v] : ser_curve(mod, p20, grid, opt))
                    csv << g17(rho) << ',' << g17(v) << '\n';
                const auto path = (fs::path(out_dir) / ("S" + std::to_string(s) + ".csv")).string();
                write_file(path, csv.str());
                outputs.push_back(path);
                json sj;
                sj["scenario"] = "S" + std::to_string(s);
                sj["modulation"] = mod.name;
                sj["resolved_config"] = config_json(cfg20, mod.name, opt.perturb_epsilon_rel);
                scen.push_back(sj);
            }
            const auto spath = (fs::path(out_dir) / (label + "_summary.csv")).string();
            write_file(spath, summary.str());
            outputs.push_back(spath);

            json m;
            m["command"] = "reproduce";
            m["argv"] = argv;
            m["tool_version"] = version_string;
            m["timestamp"] = timestamp();
            m["rho_grid"] = grid;
            m["perturb_epsilon_rel"] = *opt.perturb_epsilon_rel;
            m["m_p_convention"] = "Tr(P1) = n_R, rho = 20 dB";
            m["scenarios"] = scen;
            m["outputs"] = outputs;
            write_file((fs::path(out_dir) / "manifest.json").string(), m.dump(2) + "\n");
            (void)err;
            return exit_ok;
        }
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Symbol error rates, error floors and outage for MRC receivers in macrodiversity Rayleigh "
                     "fading with co-channel interference",
                     "macromrc"};
        app.set_version_flag("--version", std::string(version_string));
        app.require_subcommand(1);

        Common c_ser, c_val, c_floor, c_metric, c_out;
        std::size_t threads = 0;
        app.add_option("--threads", threads, "worker threads (default: MACROMRC_THREADS or all cores)");

        auto *ser_cmd = app.add_subcommand("ser", "analytic SER over a grid of rho (dB)");
        add_config(ser_cmd, c_ser);
        add_modulation(ser_cmd, c_ser);
        c_ser.grid_opt = ser_cmd->add_option("--rho-grid", c_ser.rho_grid, "start:step:stop or a,b,c (default 0:5:40)");
        ser_cmd->add_option("--out,-o", c_ser.out, "CSV path (default: standard output)");
        add_perturb(ser_cmd, c_ser);

        ValidateArgs va;
        auto *val_cmd = app.add_subcommand("validate", "analytic SER against the Monte Carlo link simulator");
        add_config(val_cmd, c_val);
        add_modulation(val_cmd, c_val);
        c_val.grid_opt = val_cmd->add_option("--rho-grid", c_val.rho_grid, "start:step:stop or a,b,c (default 0:5:40)");
        va.symbols_opt = val_cmd->add_option("--symbols", va.symbols, "symbols per grid point (default 1e6)");
        va.seed_opt = val_cmd->add_option("--seed", va.seed, "base seed (default 1)");
        va.substreams_opt = val_cmd->add_option("--substreams", va.substreams, "independent random substreams (default 64)");
        val_cmd->add_option("--out,-o", c_val.out, "CSV path (default: standard output)");
        add_perturb(val_cmd, c_val);
        va.corrupt_opt = val_cmd->add_option("--corrupt-analytic", va.corrupt)->group(""); // failure-path test hook

        auto *floor_cmd = app.add_subcommand("floor", "error floor (sigma^2 = 0)");
        add_config(floor_cmd, c_floor);
        add_modulation(floor_cmd, c_floor);
        add_perturb(floor_cmd, c_floor);

        auto *metric_cmd = app.add_subcommand("metric", "mean-SINR power metric m_p");
        add_config(metric_cmd, c_metric);

        double threshold_db = 0.0;
        auto *out_cmd = app.add_subcommand("outage", "Pr(gamma < threshold)");
        add_config(out_cmd, c_out);
        add_modulation(out_cmd, c_out);
        add_perturb(out_cmd, c_out);
        out_cmd->add_option("--threshold-db", threshold_db, "threshold in dB (-inf allowed)")->required();

        int table = 0, figure = 0;
        std::string out_dir = "reproduce_out", rep_grid = "0:2:40";
        std::string rep_eps;
        auto *rep_cmd = app.add_subcommand("reproduce", "published tables and figure data as CSV");
        auto *t_opt = rep_cmd->add_option("--table", table, "1, 2 or 3")->check(CLI::IsMember({1, 2, 3}));
        auto *f_opt = rep_cmd->add_option("--figure", figure, "2, 3, 4 or 5")->check(CLI::IsMember({2, 3, 4, 5}));
        t_opt->excludes(f_opt);
        rep_cmd->add_option("--out-dir", out_dir, "output directory (default reproduce_out)");
        rep_cmd->add_option("--rho-grid", rep_grid, "grid for the per-scenario curves (default 0:2:40)");
        auto *rep_perturb = rep_cmd->add_option("--perturb", rep_eps, "perturbation (default 1e-5)")->expected(0, 1);

        std::vector<std::string> args(argv, argv + argc);
        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? exit_ok : exit_usage;
        }
        for (Common *c : {&c_ser, &c_val, &c_floor, &c_metric, &c_out})
            c->threads = threads;
        if (threads)
            setenv("MACROMRC_THREADS", std::to_string(threads).c_str(), 1);

        try
        {
            if (ser_cmd->parsed())
                return cmd_ser(c_ser, args, out);
            if (val_cmd->parsed())
                return cmd_validate(c_val, va, args, out, err);
            if (floor_cmd->parsed())
                return cmd_floor(c_floor, out);
            if (metric_cmd->parsed())
                return cmd_metric(c_metric, out);
            if (out_cmd->parsed())
                return cmd_outage(c_out, threshold_db, out);
            if (rep_cmd->parsed())
            {
                if (!t_opt->count() && !f_opt->count())
                {
                    err << "reproduce needs --table or --figure\n";
                    return exit_usage;
                }
                const double eps = rep_perturb->count() ? parse_perturb(rep_eps) : default_epsilon;
                return cmd_reproduce(table, figure, out_dir, rep_grid, eps, args, out, err);
            }
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const CoincidentPowerError &e)
        {
            err << "degenerate powers: " << e.what() << " (use --perturb)\n";
            return exit_degenerate;
        }
        catch (const NearSingularError &e)
        {
            err << "degenerate powers: " << e.what() << " (use --perturb)\n";
            return exit_degenerate;
        }
        catch (const UndefinedMetricError &e)
        {
            err << "undefined: " << e.what() << '\n';
            return exit_undefined;
        }
        catch (const InvalidParameter &e)
        {
            err << "invalid parameter: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_failure;
        }
        return exit_usage;
    }
}
