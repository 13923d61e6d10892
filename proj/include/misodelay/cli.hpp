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

#ifndef MISODELAY_CLI_HPP
#define MISODELAY_CLI_HPP

#include "misodelay/scheduling.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace misodelay
{
    enum class Command
    {
        kNone,
        kAnalyze,
        kSweep,
        kSimulate,
        kValidate,
    };

    Command parse_command(std::string_view name);

    /// Configuration problem; line() is 0 when the error is not tied to a line.
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(const std::string& what, std::string key, int line)
            : std::runtime_error(what), key_(std::move(key)), line_(line)
        {
        }

        const std::string& key() const { return key_; }
        int line() const { return line_; }

    private:
        std::string key_;
        int line_;
    };

    /// Everything one CLI invocation needs. Defaults are documented in the README.
    struct RunManifest
    {
        Command command = Command::kNone;
        SystemConfig system;
        double p_total_db = 0.0;
        std::optional<int> t_super;
        std::optional<int> t_super_min;
        std::optional<int> t_super_max;
        std::vector<double> alpha_list;
        std::int64_t superframes = 100000;
        int replications = 10;
        std::uint64_t seed = 1;
        bool seed_given = false; ///< validate keeps its own default seed otherwise
        int warmup_superframes = 100;
        std::string out;
    };

    /// Parses flat "key = value" text with '#' comments. Unknown or duplicate keys,
    /// malformed values and violated constraints raise ConfigError.
    RunManifest parse_config(std::string_view text);

    RunManifest load_config(const std::filesystem::path& path);

    /// Runs the manifest's command. CSV goes to manifest.out (stdout when empty);
    /// progress and validation lines go to log. Returns the process exit status.
    int execute(const RunManifest& manifest, std::ostream& log);
} // namespace misodelay

#endif // MISODELAY_CLI_HPP
