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

#include "misodelay/validation.hpp"

#include "misodelay/channel_model.hpp"
#include "misodelay/random.hpp"
#include "misodelay/snc_analysis.hpp"
#include "misodelay/statistics.hpp"

#include <fmt/format.h>

#include <cmath>
#include <utility>

namespace misodelay
{
    std::vector<ValidationCase> validate_gain_oracle(const ValidationOptions& options)
    {
        std::vector<std::pair<int, int>> grid;
        for (int nt : options.antenna_counts)
            for (int k = 1; k <= nt; ++k)
                grid.emplace_back(nt, k);

        std::vector<ValidationCase> cases(grid.size());
        const double critical = ks_critical_value(options.ks_significance, options.ks_samples);

#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < static_cast<int>(grid.size()); ++i)
        {
            const auto [nt, k] = grid[static_cast<std::size_t>(i)];
            RandomStream rng = make_stream(options.seed, StreamPurpose::kValidation,
                                           static_cast<std::uint64_t>(100 * nt + k));
            std::vector<double> xi;
            xi.reserve(options.ks_samples);
            std::size_t singular = 0;
            for (std::size_t n = 0; n < options.ks_samples; ++n)
            {
                auto draw = zfbf_gain_oracle(nt, k, rng);
                singular += draw.singular_resamples;
                xi.push_back(draw.xi.front());
            }
            const int m = nt - k + 1;
            const double d = ks_statistic(xi, [m](double x) { return gain_cdf(x, m); });
            auto& c = cases[static_cast<std::size_t>(i)];
            c.name = fmt::format("gain oracle nt={} k={} vs Gamma({},1)", nt, k, m);
            c.passed = d < critical;
            c.detail = fmt::format("KS D={:.5f} critical={:.5f} singular_resamples={}", d, critical, singular);
        }
        return cases;
    }

    std::vector<ValidationCase> validate_mellin_closed_form(const ValidationOptions& options)
    {
        const std::vector<double> rhos = {0.1, 1.0, 10.0, std::pow(10.0, 1.5) / 8.0, std::pow(10.0, 1.5)};
        const std::vector<double> exponents = {0.01, 0.1, 1.0, 5.0, 20.0};
        std::vector<ValidationCase> cases;
        for (int m = 1; m <= 8; ++m)
        {
            double worst = 0.0;
            int fallbacks = 0;
            for (double rho : rhos)
                for (double s_tilde : exponents)
                {
                    const auto closed = evaluate_mellin_service_component(rho, m, s_tilde);
                    const double oracle = log_mellin_service_component_oracle(rho, m, s_tilde);
                    worst = std::max(worst, std::abs(std::expm1(closed.log_value - oracle)));
                    fallbacks += closed.used_quadrature ? 1 : 0;
                }
            ValidationCase c;
            c.name = fmt::format("Mellin closed form vs quadrature m={}", m);
            c.passed = worst <= options.mellin_rel_tol;
            c.detail = fmt::format("max rel err={:.3e} over {} points ({} via cancellation fallback)", worst,
                                   rhos.size() * exponents.size(), fallbacks);
            cases.push_back(std::move(c));
        }
        return cases;
    }

    std::vector<ValidationCase> run_validation_suite(const ValidationOptions& options)
    {
        auto cases = validate_mellin_closed_form(options);
        auto oracle = validate_gain_oracle(options);
        cases.insert(cases.end(), std::make_move_iterator(oracle.begin()), std::make_move_iterator(oracle.end()));
        return cases;
    }
} // namespace misodelay
