// SPDX-License-Identifier: Apache-2.0
//
// dpirs: dual-polarized IRS-assisted massive MIMO-NOMA link simulator
// Copyright (C) 2026 The dpirs authors
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

#include "dpirs/csv.hpp"
#include "dpirs/simulation.hpp"
#include "dpirs/validate.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;

namespace {

fs::path preset_dir()
{
    if (const char *env = std::getenv("DPIRS_PRESET_DIR"))
        return env;
    return DPIRS_PRESET_DIR;
}

struct Overrides
{
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::string out;
    int workers = 0;
};

void add_overrides(CLI::App *cmd, Overrides &o)
{
    cmd->add_option("-o,--out", o.out, "CSV output path (stdout when omitted)");
    cmd->add_option("--trials", o.trials, "Monte Carlo trials per grid point (clears per-L overrides)");
    cmd->add_option("--seed", o.seed, "Master seed");
    cmd->add_option("-j,--workers", o.workers, "Worker threads (default: DPIRS_WORKERS or all cores)");
}

void apply(dpirs::SimConfig &cfg, const Overrides &o)
{
    if (o.trials)
    {
        cfg.trials = *o.trials;
        cfg.trials_by_elements.clear();
    }
    if (o.seed)
        cfg.seed = *o.seed;
}

void write(const std::vector<dpirs::RateRecord> &records, const std::string &out)
{
    if (out.empty())
        std::cout << dpirs::format_csv(records);
    else
        dpirs::emit_csv(records, out);
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"dpirs: dual-polarized IRS-assisted MIMO-NOMA link simulator"};
    app.require_subcommand(1);

    Overrides run_o, sweep_o;
    std::string run_cfg, analytic_cfg, analytic_out, validate_cfg, preset;

    auto *run = app.add_subcommand("run", "Monte Carlo sweep of a config file");
    run->add_option("config", run_cfg, "JSON config")->required()->check(CLI::ExistingFile);
    add_overrides(run, run_o);

    auto *analytic = app.add_subcommand("analytic", "Closed-form large-L rates of a config file");
    analytic->add_option("config", analytic_cfg, "JSON config")->required()->check(CLI::ExistingFile);
    analytic->add_option("-o,--out", analytic_out, "CSV output path (stdout when omitted)");

    auto *validate = app.add_subcommand("validate", "Run the invariant suite");
    validate->add_option("--config", validate_cfg, "JSON config (default: fig4 preset)")->check(CLI::ExistingFile);

    auto *sweep = app.add_subcommand("sweep", "Run a bundled figure preset");
    sweep->add_option("--preset", preset, "fig4 ... fig8")->required();
    add_overrides(sweep, sweep_o);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            auto cfg = dpirs::load_config(run_cfg);
            apply(cfg, run_o);
            write(dpirs::run_sweep(cfg, run_o.workers), run_o.out);
        }
        else if (*analytic)
        {
            write(dpirs::analytic_records(dpirs::load_config(analytic_cfg)), analytic_out);
        }
        else if (*sweep)
        {
            const fs::path path = preset_dir() / (preset + ".json");
            if (!fs::exists(path))
                throw std::invalid_argument("unknown preset '" + preset + "' (looked in " + path.string() + ")");
            auto cfg = dpirs::load_config(path);
            apply(cfg, sweep_o);
            write(dpirs::run_sweep(cfg, sweep_o.workers), sweep_o.out);
        }
        else if (*validate)
        {
            const fs::path path = validate_cfg.empty() ? preset_dir() / "fig4.json" : fs::path(validate_cfg);
            const auto results = dpirs::run_invariant_suite(dpirs::load_config(path));
            bool all = true;
            for (const auto &r : results)
            {
                std::cout << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.detail << ")\n";
                all = all && r.passed;
            }
            return all ? 0 : 1;
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "dpirs: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
