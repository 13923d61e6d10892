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

#include "misodelay/statistics.hpp"

#include "misodelay/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace misodelay
{
    double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf)
    {
        if (samples.empty())
            throw std::domain_error("ks_statistic requires samples");
        std::sort(samples.begin(), samples.end());
        const double n = static_cast<double>(samples.size());
        double d = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
        {
            const double f = cdf(samples[i]);
            d = std::max({d, (i + 1) / n - f, f - i / n});
        }
        return d;
    }

    double ks_critical_value(double significance, std::size_t n)
    {
        if (!(significance > 0.0 && significance < 1.0) || n == 0)
            throw std::domain_error("ks_critical_value requires 0 < significance < 1 and n > 0");
        return std::sqrt(-0.5 * std::log(significance / 2.0)) / std::sqrt(static_cast<double>(n));
    }

    double chi_square_statistic(std::span<const std::uint64_t> observed, std::span<const double> probs)
    {
        if (observed.size() != probs.size() || observed.empty())
            throw std::domain_error("chi_square_statistic requires matching nonempty inputs");
        const double total = static_cast<double>(std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
        double stat = 0.0;
        for (std::size_t i = 0; i < observed.size(); ++i)
        {
            const double expected = total * probs[i];
            const double diff = static_cast<double>(observed[i]) - expected;
            stat += diff * diff / expected;
        }
        return stat;
    }

    double chi_square_sf(double stat, int df)
    {
        if (df < 1)
            throw std::domain_error("chi_square_sf requires df >= 1");
        if (stat <= 0.0)
            return 1.0;
        return gamma_q(0.5 * df, 0.5 * stat);
    }
} // namespace misodelay
