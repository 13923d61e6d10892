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

#ifndef MISODELAY_VALIDATION_HPP
#define MISODELAY_VALIDATION_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace misodelay
{
    struct ValidationCase
    {
        std::string name;
        bool passed = false;
        std::string detail;
    };

    struct ValidationOptions
    {
        std::uint64_t seed = 20180419;
        std::size_t ks_samples = 100000;
        std::vector<int> antenna_counts = {2, 4, 6};
        double ks_significance = 0.01;
        double mellin_rel_tol = 1e-6;
    };

    /// KS test of the pseudo-inverse oracle gains against Gamma(nt - k + 1, 1)
    /// for every 1 <= k <= nt. Cases run in parallel.
    std::vector<ValidationCase> validate_gain_oracle(const ValidationOptions& options = {});

    /// Closed-form service Mellin transform vs quadrature over
    /// m = 1..8, rho in {0.1, 1, 10, 10^1.5 / 8, 10^1.5}, s~ in {0.01, 0.1, 1, 5, 20}.
    std::vector<ValidationCase> validate_mellin_closed_form(const ValidationOptions& options = {});

    std::vector<ValidationCase> run_validation_suite(const ValidationOptions& options = {});
} // namespace misodelay

#endif // MISODELAY_VALIDATION_HPP
