// misodelay: delay bounds and queue simulation for the multiuser MISO downlink
// Copyright (C) 2026 The misodelay authors
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

#include "misodelay/cli.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Delay-violation bounds and queue simulation for the multiuser MISO downlink"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        auto* opt = sub->add_option("--config", config_path, "flat key = value configuration file");
        if (needs_config)
            opt->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "CSV output path (default: stdout or the config's 'out')");
        sub->add_option("--seed", seed, "master random seed (overrides the config)");
    };

    auto* analyze = app.add_subcommand("analyze", "delay bound for one superframe length");
    auto* sweep = app.add_subcommand("sweep", "bound over every feasible superframe length");
    auto* simulate = app.add_subcommand("simulate", "Monte Carlo queue simulation next to the bound");
    auto* validate = app.add_subcommand("validate", "pseudo-inverse KS suite and Mellin closed-form checks");
    add_common(analyze, true);
    add_common(sweep, true);
    add_common(simulate, true);
    add_common(validate, false);

    CLI11_PARSE(app, argc, argv);

    try
    {
        const auto* sub = app.get_subcommands().front();
        misodelay::RunManifest manifest;
        if (!config_path.empty())
            manifest = misodelay::load_config(config_path);
        manifest.command = misodelay::parse_command(sub->get_name());
        if (!out_path.empty())
            manifest.out = out_path;
        if (sub->count("--seed") > 0)
        {
            manifest.seed = seed;
            manifest.seed_given = true;
        }
        return misodelay::execute(manifest, std::cerr);
    }
    catch (const misodelay::ConfigError& e)
    {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
