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

#include "misodelay/queue_sim.hpp"
#include "misodelay/snc_analysis.hpp"
#include "misodelay/validation.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

namespace misodelay
{
    Command parse_command(std::string_view name)
    {
        if (name == "analyze")
            return Command::kAnalyze;
        if (name == "sweep")
            return Command::kSweep;
        if (name == "simulate")
            return Command::kSimulate;
        if (name == "validate")
            return Command::kValidate;
        throw std::invalid_argument("unknown command '" + std::string(name) + "'");
    }

    namespace
    {
        std::string_view trim(std::string_view s)
        {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string_view::npos)
                return {};
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        }

        struct Entry
        {
            std::string value;
            int line;
        };

        template <typename T>
        T parse_number(const std::string& key, const Entry& e)
        {
            T v{};
            const char* begin = e.value.data();
            const char* end = begin + e.value.size();
            const auto [ptr, ec] = std::from_chars(begin, end, v);
            if (ec != std::errc{} || ptr != end)
                throw ConfigError(fmt::format("line {}: {}: cannot parse '{}' as a number", e.line, key, e.value), key,
                                  e.line);
            return v;
        }

        std::vector<double> parse_list(const std::string& key, const Entry& e)
        {
            std::vector<double> out;
            std::string item;
            std::istringstream in(e.value);
            while (std::getline(in, item, ','))
            {
                const auto t = trim(item);
                if (t.empty())
                    continue;
                out.push_back(parse_number<double>(key, Entry{std::string(t), e.line}));
            }
            if (out.empty())
                throw ConfigError(fmt::format("line {}: {}: empty list", e.line, key), key, e.line);
            return out;
        }

        [[noreturn]] void invalid(const std::string& key, const std::string& why)
        {
            throw ConfigError(key + ": " + why, key, 0);
        }

        void check_superframe(const std::string& key, int t, const SystemConfig& sys)
        {
            const auto [lo, hi] = feasible_superframe_range(sys.k_tot, sys.nt);
            if (t < lo)
                invalid(key, fmt::format("{} gives k_avg = {:.4g} > nt = {}; feasible range is [{}, {}]", t,
                                         static_cast<double>(sys.k_tot) / t, sys.nt, lo, hi));
            if (t > hi)
                invalid(key, fmt::format("{} gives k_avg < 1; feasible range is [{}, {}]", t, lo, hi));
        }
    } // namespace

    RunManifest parse_config(std::string_view text)
    {
        static const std::set<std::string> known = {
            "nt",           "k_tot",       "nd",          "p_total_db",         "alpha", "w",
            "scheme",       "t_super",     "t_super_min", "t_super_max",        "alpha_list",
            "superframes",  "replications", "seed",       "warmup_superframes", "out"};

        std::map<std::string, Entry> entries;
        int line_no = 0;
        std::istringstream in{std::string(text)};
        std::string raw;
        while (std::getline(in, raw))
        {
            ++line_no;
            std::string_view line = raw;
            if (const auto hash = line.find('#'); hash != std::string_view::npos)
                line = line.substr(0, hash);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError(fmt::format("line {}: expected 'key = value'", line_no), "", line_no);
            const std::string key(trim(line.substr(0, eq)));
            const std::string value(trim(line.substr(eq + 1)));
            if (key.empty())
                throw ConfigError(fmt::format("line {}: missing key", line_no), "", line_no);
            if (!known.contains(key))
                throw ConfigError(fmt::format("line {}: unknown key '{}'", line_no, key), key, line_no);
            if (value.empty())
                throw ConfigError(fmt::format("line {}: {}: missing value", line_no, key), key, line_no);
            if (!entries.emplace(key, Entry{value, line_no}).second)
                throw ConfigError(fmt::format("line {}: duplicate key '{}'", line_no, key), key, line_no);
        }

        auto require = [&](const std::string& key) -> const Entry& {
            const auto it = entries.find(key);
            if (it == entries.end())
                invalid(key, "required key is missing");
            return it->second;
        };
        auto optional = [&](const std::string& key) -> const Entry* {
            const auto it = entries.find(key);
            return it == entries.end() ? nullptr : &it->second;
        };

        RunManifest m;
        auto& sys = m.system;
        sys.nt = parse_number<int>("nt", require("nt"));
        sys.k_tot = parse_number<int>("k_tot", require("k_tot"));
        sys.nd = parse_number<int>("nd", require("nd"));
        m.p_total_db = parse_number<double>("p_total_db", require("p_total_db"));
        sys.p_total = db_to_linear(m.p_total_db);
        sys.w = parse_number<int>("w", require("w"));
        {
            const Entry& e = require("scheme");
            try
            {
                sys.scheme = parse_scheme(e.value);
            }
            catch (const std::invalid_argument& ex)
            {
                throw ConfigError(fmt::format("line {}: scheme: {}", e.line, ex.what()), "scheme", e.line);
            }
        }
        if (const Entry* e = optional("alpha_list"))
            m.alpha_list = parse_list("alpha_list", *e);
        if (const Entry* e = optional("alpha"))
            sys.alpha = parse_number<double>("alpha", *e);
        else if (!m.alpha_list.empty())
            sys.alpha = m.alpha_list.front();
        else
            invalid("alpha", "required key is missing (or give alpha_list)");

        if (const Entry* e = optional("t_super"))
            m.t_super = parse_number<int>("t_super", *e);
        if (const Entry* e = optional("t_super_min"))
            m.t_super_min = parse_number<int>("t_super_min", *e);
        if (const Entry* e = optional("t_super_max"))
            m.t_super_max = parse_number<int>("t_super_max", *e);
        if (const Entry* e = optional("superframes"))
            m.superframes = parse_number<std::int64_t>("superframes", *e);
        if (const Entry* e = optional("replications"))
            m.replications = parse_number<int>("replications", *e);
        if (const Entry* e = optional("seed"))
        {
            m.seed = parse_number<std::uint64_t>("seed", *e);
            m.seed_given = true;
        }
        if (const Entry* e = optional("warmup_superframes"))
            m.warmup_superframes = parse_number<int>("warmup_superframes", *e);
        if (const Entry* e = optional("out"))
            m.out = e->value;

        try
        {
            sys.validate();
        }
        catch (const std::invalid_argument& ex)
        {
            const std::string what = ex.what();
            throw ConfigError(what, what.substr(0, what.find(':')), 0);
        }
        for (double a : m.alpha_list)
            if (!(a >= 0.0) || !std::isfinite(a))
                invalid("alpha_list", "every entry must be finite and >= 0");
        if (m.t_super)
            check_superframe("t_super", *m.t_super, sys);
        if (m.t_super_min)
            check_superframe("t_super_min", *m.t_super_min, sys);
        if (m.t_super_max)
            check_superframe("t_super_max", *m.t_super_max, sys);
        if (m.t_super_min && m.t_super_max && *m.t_super_min > *m.t_super_max)
            invalid("t_super_min", "must not exceed t_super_max");
        if (m.superframes < 1)
            invalid("superframes", "must be >= 1");
        if (m.replications < 1)
            invalid("replications", "must be >= 1");
        if (m.warmup_superframes < 0)
            invalid("warmup_superframes", "must be >= 0");
        return m;
    }

    RunManifest load_config(const std::filesystem::path& path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("cannot open config file " + path.string(), "", 0);
        std::stringstream buf;
        buf << in.rdbuf();
        return parse_config(buf.str());
    }

    namespace
    {
        // full precision for ordinary reals, scientific for probabilities
        std::string real(double v)
        {
            return fmt::format("{:.17g}", v);
        }

        std::string prob(double v)
        {
            return fmt::format("{:.17e}", v);
        }

        std::string log10_of(double log_value)
        {
            return fmt::format("{:.17g}", log_value / std::log(10.0));
        }

        class CsvSink
        {
        public:
            explicit CsvSink(const std::string& path)
            {
                if (!path.empty())
                {
                    file_.open(path, std::ios::binary | std::ios::trunc);
                    if (!file_)
                        throw std::runtime_error("cannot open output file " + path);
                }
            }

            std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

            void finish()
            {
                stream().flush();
                if (!stream())
                    throw std::runtime_error("error writing CSV output");
            }

        private:
            std::ofstream file_;
        };

        int run_analyze(const RunManifest& m)
        {
            if (!m.t_super)
                throw ConfigError("t_super: required for analyze", "t_super", 0);
            const auto& sys = m.system;
            const SchedulePlan plan = build_schedule(sys.k_tot, *m.t_super, sys.nt);
            const auto mix = service_mixture(plan, sys.p_total, sys.scheme, sys.nt);
            const auto bound = delay_bound(sys, *m.t_super);
            const double rate = expected_service_rate(plan, mix, sys.nd);

            CsvSink sink(m.out);
            auto& os = sink.stream();
            os << "t_super,k_avg,s_opt,pv_bound,log10_pv_bound,stable,expected_rate\n";
            os << fmt::format("{},{},{},{},{},{},{}\n", *m.t_super, real(plan.k_avg()), real(bound.s_opt),
                              prob(bound.pv_bound), log10_of(bound.log_pv_bound), bound.stable ? 1 : 0, real(rate));
            sink.finish();
            return 0;
        }

        int run_sweep(const RunManifest& m, std::ostream& log)
        {
            std::vector<double> alphas = m.alpha_list;
            if (alphas.empty())
                alphas.push_back(m.system.alpha);

            SweepOptions options;
            options.t_super_min = m.t_super_min;
            options.t_super_max = m.t_super_max;

            CsvSink sink(m.out);
            auto& os = sink.stream();
            os << "alpha,t_super,k_avg,s_opt,pv_bound,log10_pv_bound,stable,expected_rate,argmin_k_avg,is_argmin\n";
            for (double alpha : alphas)
            {
                SystemConfig sys = m.system;
                sys.alpha = alpha;
                const auto sweep = sweep_superframe(sys, options);
                const double best_k = sweep.best().k_avg;
                fmt::print(log, "alpha={}: argmin t_super={} k_avg={:.6g} pv_bound={:.6e}\n", real(alpha),
                           sweep.best().t_super, best_k, sweep.best().bound.pv_bound);
                for (std::size_t i = 0; i < sweep.rows.size(); ++i)
                {
                    const auto& r = sweep.rows[i];
                    os << fmt::format("{},{},{},{},{},{},{},{},{},{}\n", real(alpha), r.t_super, real(r.k_avg),
                                      real(r.bound.s_opt), prob(r.bound.pv_bound), log10_of(r.bound.log_pv_bound),
                                      r.bound.stable ? 1 : 0, real(r.expected_rate), real(best_k),
                                      i == sweep.argmin ? 1 : 0);
                }
            }
            sink.finish();
            return 0;
        }

        int run_simulate(const RunManifest& m, std::ostream& log)
        {
            if (!m.t_super)
                throw ConfigError("t_super: required for simulate", "t_super", 0);
            SimOptions options;
            options.superframes = m.superframes;
            options.replications = m.replications;
            options.seed = m.seed;
            options.warmup_superframes = m.warmup_superframes;
            const SimResult result = simulate(m.system, *m.t_super, options);
            if (result.censored > 0)
                fmt::print(log, "warning: {} delay samples were censored at the drain limit\n", result.censored);

            CsvSink sink(m.out);
            auto& os = sink.stream();
            os << "w,empirical_pv,ci95,pv_bound,log10_pv_bound\n";
            for (int w = 0; w <= m.system.w; ++w)
            {
                SystemConfig sys = m.system;
                sys.w = w;
                const auto pv = empirical_pv(result, w);
                const auto bound = delay_bound(sys, *m.t_super);
                os << fmt::format("{},{},{},{},{}\n", w, prob(pv.estimate), pv.has_ci ? prob(pv.ci95) : "nan",
                                  prob(bound.pv_bound), log10_of(bound.log_pv_bound));
            }
            sink.finish();
            return 0;
        }

        int run_validate(const RunManifest& m, std::ostream& log)
        {
            ValidationOptions options;
            if (m.seed_given)
                options.seed = m.seed;
            bool ok = true;
            for (const auto& c : run_validation_suite(options))
            {
                fmt::print(log, "[{}] {}: {}\n", c.passed ? "PASS" : "FAIL", c.name, c.detail);
                ok = ok && c.passed;
            }
            return ok ? 0 : 1;
        }
    } // namespace

    int execute(const RunManifest& manifest, std::ostream& log)
    {
        switch (manifest.command)
        {
        case Command::kAnalyze:
            return run_analyze(manifest);
        case Command::kSweep:
            return run_sweep(manifest, log);
        case Command::kSimulate:
            return run_simulate(manifest, log);
        case Command::kValidate:
            return run_validate(manifest, log);
        case Command::kNone:
            break;
        }
        throw std::invalid_argument("no command selected");
    }
} // namespace misodelay
