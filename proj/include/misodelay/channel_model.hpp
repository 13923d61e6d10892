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

#ifndef MISODELAY_CHANNEL_MODEL_HPP
#define MISODELAY_CHANNEL_MODEL_HPP

#include "misodelay/random.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace misodelay
{
    enum class Scheme
    {
        kZfbf,
        kZfDpc,
    };

    /// "zfbf" or "zfdpc"
    std::string_view to_string(Scheme scheme);
    Scheme parse_scheme(std::string_view text);

    /// Effective channel gain xi ~ Gamma(m, 1), i.e. half a chi-square with 2m degrees of freedom.
    struct EffectiveGain
    {
        double xi = 0.0;
        int m = 1;
    };

    struct DofEntry
    {
        int m = 1;
        double prob = 1.0;
    };

    /// Distribution of the degrees-of-freedom parameter m seen by one scheduled user.
    struct DofAssignment
    {
        std::vector<DofEntry> entries;
    };

    /// Density of Gamma(m, 1) at xi.
    double gain_pdf(double xi, int m);

    /// CDF of Gamma(m, 1) at xi.
    double gain_cdf(double xi, int m);

    double sample_gain(int m, RandomStream& rng);

    struct OracleDraw
    {
        std::vector<double> xi;            ///< one normalizer per scheduled user
        std::size_t singular_resamples = 0; ///< draws rejected as numerically singular
    };

    /// Matrix-level ZFBF gains: draws a k x nt i.i.d. CN(0, 1) channel, forms the
    /// pseudo-inverse H^H (H H^H)^{-1} and returns 1 / |column j|^2 for every user j.
    /// Draws whose Gram matrix has condition number above 1e12 are redrawn.
    OracleDraw zfbf_gain_oracle(int nt, int k, RandomStream& rng);

    /// ZFBF: m = nt - k + 1 with probability one. ZF-DPC: the kappa-th encoded user
    /// gets m = nt - kappa + 1; with a uniformly random order each kappa has prob 1/k.
    DofAssignment dof_assignment(Scheme scheme, int nt, int k);

    /// nd * log2(1 + rho * xi) bits.
    double service_bits(double rho, double xi, int nd);
} // namespace misodelay

#endif // MISODELAY_CHANNEL_MODEL_HPP
