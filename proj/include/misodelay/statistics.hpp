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

#ifndef MISODELAY_STATISTICS_HPP
#define MISODELAY_STATISTICS_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace misodelay
{
    /// Two-sided Kolmogorov-Smirnov distance between the empirical CDF of samples
    /// (sorted in place) and cdf.
    double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);

    /// Asymptotic critical value of the one-sample KS distance at the given significance.
    double ks_critical_value(double significance, std::size_t n);

    /// Pearson statistic of observed counts against category probabilities.
    double chi_square_statistic(std::span<const std::uint64_t> observed, std::span<const double> probs);

    /// Upper tail P(X > stat) of a chi-square law with df degrees of freedom.
    double chi_square_sf(double stat, int df);
} // namespace misodelay

#endif // MISODELAY_STATISTICS_HPP
