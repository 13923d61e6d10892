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

#ifndef MISODELAY_SNC_ANALYSIS_HPP
#define MISODELAY_SNC_ANALYSIS_HPP

#include "misodelay/scheduling.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace misodelay
{
    /// Parameters of the stochastic network calculus bound are expressed in the
    /// "SNR domain": bits b become e^b, so the Mellin transform M_X(theta) = E[X^{theta-1}]
    /// of arrivals and service compose multiplicatively.

    /// log M_A(1 + s) for constant arrivals of alpha bits per slot over a T-slot superframe.
    double log_mellin_arrival(double alpha, int t_super, double s);

    /// s~ = s * nd / ln 2, the exponent of (1 + rho xi) in the service transform.
    double service_exponent(double s, int nd);

    struct MellinEvaluation
    {
        double log_value = 0.0;
        bool used_quadrature = false;
        double cancellation_ratio = 1.0; ///< |sum| / max |term| of the alternating series
    };

    /// log E[(1 + rho xi)^{-s~}], xi ~ Gamma(m, 1), from the finite alternating series
    ///   sum_l C(m-1, l) (-1)^l / Gamma(m) * rho^{-l-s~} e^{1/rho} Gamma(m - l - s~, 1/rho).
    /// When the sum retains less than 1e-5 of its largest term the quadrature oracle
    /// is used instead; the result reports which path produced it.
    MellinEvaluation evaluate_mellin_service_component(double rho, int m, double s_tilde);

    double log_mellin_service_component(double rho, int m, double s_tilde);

    /// Same quantity by direct quadrature of (1 + rho xi)^{-s~} f_m(xi) over [0, inf).
    double log_mellin_service_component_oracle(double rho, int m, double s_tilde);

    /// log M_S(1 - s) of the per-superframe service: log sum_i p_i E[(1 + rho_i xi)^{-s~}].
    double log_mellin_service(const ServiceMixture& mix, double s, int nd);

    /// j * log M_S - log(1 - M_A M_S), or nullopt when M_A M_S >= 1 (unstable).
    std::optional<double> log_kernel_from_transforms(double log_arrival, double log_service, int j);

    std::optional<double> log_kernel(double s, int j, const ServiceMixture& mix, double alpha, int t_super, int nd);

    enum class SearchBoundary
    {
        kInterior,
        kLower,
        kUpper,
    };

    struct SOptimum
    {
        double s = 0.0;
        double value = 0.0;
        bool finite = false;
        SearchBoundary boundary = SearchBoundary::kInterior;
    };

    /// Minimizes objective over [s_min, s_max]: 200-point geometric scan followed by
    /// golden-section refinement in log s around the best grid point (relative
    /// tolerance 1e-6). Unstable points should return +inf.
    SOptimum optimize_s(const std::function<double(double)>& objective, double s_min, double s_max);

    struct DelayBoundOptions
    {
        double s_min = 1e-8;
        double s_max = 10.0;
        GroupWeighting weighting = GroupWeighting::kServiceCount;
    };

    struct DelayBoundResult
    {
        double pv_bound = 1.0;     ///< clamped to 1
        double log_pv_bound = 0.0; ///< natural log of pv_bound, kept to avoid underflow
        double s_opt = 0.0;
        bool stable = false;
        double log_kernel_j1 = 0.0;
        double log_kernel_j2 = 0.0;
        SearchBoundary boundary = SearchBoundary::kInterior;
    };

    /// inf_s p1 K(s, j1) + p2 K(s, j2) with one shared s, for the given superframe length.
    DelayBoundResult delay_bound(const SystemConfig& config, int t_super, const DelayBoundOptions& options = {});

    /// Expected service per user per slot, (nd / T) sum_i p_i E[log2(1 + rho_i xi)].
    double expected_service_rate(const SchedulePlan& plan, const ServiceMixture& mix, int nd);

    struct SweepRow
    {
        int t_super = 0;
        double k_avg = 0.0;
        DelayBoundResult bound;
        double expected_rate = 0.0;
    };

    struct SweepOptions
    {
        std::optional<int> t_super_min;
        std::optional<int> t_super_max;
        DelayBoundOptions bound;
    };

    struct SweepResult
    {
        std::vector<SweepRow> rows; ///< ascending t_super
        std::size_t argmin = 0;     ///< smallest bound; ties go to the smaller k_avg

        const SweepRow& best() const { return rows.at(argmin); }
    };

    /// One row per feasible t_super, evaluated in parallel (OpenMP).
    SweepResult sweep_superframe(const SystemConfig& config, const SweepOptions& options = {});

    /// Serial reference of sweep_superframe; identical output.
    SweepResult sweep_superframe_serial(const SystemConfig& config, const SweepOptions& options = {});
} // namespace misodelay

#endif // MISODELAY_SNC_ANALYSIS_HPP
