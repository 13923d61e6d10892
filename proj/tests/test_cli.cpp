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

#include "doctest.h"
#include "misodelay/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace misodelay;
namespace fs = std::filesystem;

namespace
{
    const char* kReference = R"(# reference system
nt = 8
k_tot = 120
nd = 1000
p_total_db = 15
scheme = zfbf
alpha = 180
w = 60
)";

    ConfigError config_error(const std::string& text)
    {
        try
        {
            (void)parse_config(text);
        }
        catch (const ConfigError& e)
        {
            return e;
        }
        FAIL("expected ConfigError for:\n" << text);
        return ConfigError("", "", 0);
    }

    std::string without_line(const std::string& text, const std::string& prefix)
    {
        std::istringstream in(text);
        std::string line, out;
        while (std::getline(in, line))
            if (line.rfind(prefix, 0) != 0)
                out += line + "\n";
        return out;
    }

    std::string slurp(const fs::path& p)
    {
        std::ifstream in(p, std::ios::binary);
        std::stringstream s;
        s << in.rdbuf();
        return s.str();
    }

    std::vector<std::map<std::string, std::string>> read_csv(const fs::path& p)
    {
        std::ifstream in(p);
        std::string line;
        std::getline(in, line);
        std::vector<std::string> header;
        {
            std::stringstream hs(line);
            std::string cell;
            while (std::getline(hs, cell, ','))
                header.push_back(cell);
        }
        std::vector<std::map<std::string, std::string>> rows;
        while (std::getline(in, line))
        {
            std::stringstream ls(line);
            std::string cell;
            std::map<std::string, std::string> row;
            for (const auto& h : header)
            {
                std::getline(ls, cell, ',');
                row[h] = cell;
            }
            rows.push_back(row);
        }
        return rows;
    }

    fs::path temp_csv(const std::string& name)
    {
        return fs::temp_directory_path() / ("misodelay_test_" + name + ".csv");
    }
} // namespace

TEST_CASE("reference config loads")
{
    const RunManifest m = parse_config(kReference);
    CHECK(m.system.nt == 8);
    CHECK(m.system.k_tot == 120);
    CHECK(m.system.nd == 1000);
    CHECK(m.p_total_db == 15.0);
    CHECK(m.system.p_total == doctest::Approx(std::pow(10.0, 1.5)).epsilon(1e-15));
    CHECK(m.system.scheme == Scheme::kZfbf);
    CHECK(m.system.alpha == 180.0);
    CHECK(m.system.w == 60);
    CHECK(m.superframes == 100000);
    CHECK(m.replications == 10);
    CHECK_FALSE(m.seed_given);
}

TEST_CASE("shipped config loads")
{
    const RunManifest m = load_config(fs::path(MISODELAY_SOURCE_DIR) / "configs" / "reference_zfbf.cfg");
    CHECK(m.system.nt == 8);
    CHECK(m.alpha_list == std::vector<double>{150.0, 160.0, 180.0});
}

TEST_CASE("config errors name the key and line")
{
    ConfigError e = config_error(without_line(kReference, "nt"));
    CHECK(e.key() == "nt");
    CHECK(std::string(e.what()).find("nt") != std::string::npos);

    e = config_error(std::string(kReference) + "t_super = 10\n");
    CHECK(e.key() == "t_super");

    e = config_error(std::string(kReference) + "colour = blue\n");
    CHECK(e.key() == "colour");
    CHECK(e.line() == 9);

    e = config_error(std::string(kReference) + "nt = 4\n");
    CHECK(e.line() == 9);

    e = config_error("nt = eight\n");
    CHECK(e.key() == "nt");
    CHECK(e.line() == 1);

    e = config_error(std::string(kReference) + "just some words\n");
    CHECK(e.line() == 9);

    e = config_error(without_line(kReference, "scheme") + "scheme = mmse\n");
    CHECK(e.key() == "scheme");

    e = config_error(without_line(kReference, "alpha"));
    CHECK(e.key() == "alpha");

    CHECK_NOTHROW(parse_config(without_line(kReference, "alpha") + "alpha_list = 1, 2\n"));
    CHECK_THROWS_AS(load_config("/nonexistent/misodelay.cfg"), ConfigError);
}

TEST_CASE("analyze at zero load")
{
    RunManifest m = parse_config(without_line(kReference, "alpha") + "alpha = 0\nt_super = 20\n");
    m.command = Command::kAnalyze;
    m.out = temp_csv("analyze").string();
    std::ostringstream log;
    REQUIRE(execute(m, log) == 0);
    const auto rows = read_csv(m.out);
    REQUIRE(rows.size() == 1);
    CHECK(std::stod(rows[0].at("pv_bound")) < 1.0);
    CHECK(rows[0].at("stable") == "1");
    CHECK(std::stod(rows[0].at("k_avg")) == 6.0);
    fs::remove(m.out);
}

TEST_CASE("sweep reports the argmin per alpha")
{
    RunManifest m = parse_config(std::string(kReference) + "alpha_list = 150, 160, 180\n");
    m.command = Command::kSweep;
    m.out = temp_csv("sweep").string();
    std::ostringstream log;
    REQUIRE(execute(m, log) == 0);
    std::map<double, double> argmin;
    int flagged = 0;
    for (const auto& row : read_csv(m.out))
    {
        argmin[std::stod(row.at("alpha"))] = std::stod(row.at("argmin_k_avg"));
        if (row.at("is_argmin") == "1")
        {
            ++flagged;
            CHECK(row.at("k_avg") == row.at("argmin_k_avg"));
        }
    }
    CHECK(flagged == 3);
    CHECK(argmin.at(150.0) == 4.0);
    CHECK(argmin.at(160.0) == 5.0);
    CHECK(argmin.at(180.0) == 6.0);
    fs::remove(m.out);
}

TEST_CASE("simulate output is byte-identical for a fixed seed")
{
    const std::string text = "nt = 2\nk_tot = 4\nnd = 100\np_total_db = 10\nscheme = zfbf\n"
                             "alpha = 70\nw = 8\nt_super = 2\nsuperframes = 20000\nreplications = 3\nseed = 4\n";
    RunManifest m = parse_config(text);
    m.command = Command::kSimulate;
    std::ostringstream log;
    m.out = temp_csv("sim_a").string();
    REQUIRE(execute(m, log) == 0);
    m.out = temp_csv("sim_b").string();
    REQUIRE(execute(m, log) == 0);
    const std::string a = slurp(temp_csv("sim_a"));
    CHECK(a == slurp(temp_csv("sim_b")));
    CHECK(a.rfind("w,empirical_pv,ci95,pv_bound,log10_pv_bound\n", 0) == 0);
    CHECK(read_csv(temp_csv("sim_a")).size() == 9);

    m.seed = 5;
    m.out = temp_csv("sim_c").string();
    REQUIRE(execute(m, log) == 0);
    CHECK(a != slurp(temp_csv("sim_c")));
    for (const char* n : {"sim_a", "sim_b", "sim_c"})
        fs::remove(temp_csv(n));
}

TEST_CASE("commands parse")
{
    CHECK(parse_command("analyze") == Command::kAnalyze);
    CHECK(parse_command("sweep") == Command::kSweep);
    CHECK(parse_command("simulate") == Command::kSimulate);
    CHECK(parse_command("validate") == Command::kValidate);
    CHECK_THROWS(parse_command("plot"));
}
