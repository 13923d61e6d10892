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

#ifndef MISODELAY_SCHEDULING_HPP
#define MISODELAY_SCHEDULING_HPP

#include "misodelay/channel_model.hpp"
#include "misodelay/random.hpp"

#include <utility>
#include <vector>

namespace misodelay
{
    /// One experiment. Power is stored linear; conversion from dB happens at load time.
    struct SystemConfig
    {
        int nt = 1;            ///< transmit antennas
        int k_tot = 1;         ///< total users
        int nd = 1;            ///< channel uses per slot
        double p_total = 1.0;  ///< total transmit power (linear)
        double alpha = 0.0;    ///< arriving bits per user per slot
        int w = 0;             ///< target delay in slots
        Scheme scheme = Scheme::kZfbf;

        /// Throws std::invalid_argument naming the offending field.
        void validate() const;
    };

    double db_to_linear(double db);

    /// Round-robin superframe: every user is served exactly once in t_super slots,
    /// t_a slots carry k_a = ceil(k_tot / t_super) users and t_b slots carry k_b = floor(...).
    struct SchedulePlan
    {
        int k_tot = 1;
        int t_super = 1;
        int t_a = 1;
        int t_b = 0;
        int k_a = 1;
        int k_b = 1;

        double k_avg() const { return static_cast<double>(k_tot) / t_super; }
    };

    /// Inclusive range of superframe lengths with 1 <= k_tot / t_super <= nt.
    std::pair<int, int> feasible_superframe_range(int k_tot, int nt);

    SchedulePlan build_schedule(int k_tot, int t_super, int nt);

    struct ServiceComponent
    {
        double prob = 1.0;
        double rho = 1.0;
        int m = 1;
        int users_in_slot = 1; ///< k_a or k_b of the slot type this component belongs to
    };

    /// Per-superframe service distribution of one user: a mixture over slot type
    /// (power rho = P / K) and degrees of freedom m.
    struct ServiceMixture
    {
        std::vector<ServiceComponent> components;
    };

    ServiceMixture service_mixture(const SchedulePlan& plan, double p_total, Scheme scheme, int nt);

    /// Users (0-based) of every slot; within a slot the order is the encoding order.
    struct SuperframeAssignment
    {
        std::vector<std::vector<int>> slots;
    };

    /// Uniform random partition of the users into the plan's slot sizes, with the
    /// positions of the k_a-sized slots also permuted.
    SuperframeAssignment draw_assignment(const SchedulePlan& plan, RandomStream& rng);

    /// Allocation-free variant for the simulator hot loop.
    void draw_assignment_into(const SchedulePlan& plan, RandomStream& rng, std::vector<int>& user_order,
                              std::vector<int>& slot_sizes);

    enum class GroupWeighting
    {
        /// weight (w mod T) / T on ceil(w / T): the probability that the trailing
        /// w mod T slots hold the user's extra service opportunity
        kServiceCount,
        /// weight (w mod T) / T on floor(w / T)
        kLiteral,
    };

    /// Two-group split of the deadline w into service counts j1 = ceil(w / T),
    /// j2 = floor(w / T) with probabilities p1, p2.
    struct GroupSplit
    {
        double p1 = 1.0;
        double p2 = 0.0;
        int j1 = 0;
        int j2 = 0;
    };

    GroupSplit group_split(int w, int t_super, GroupWeighting weighting = GroupWeighting::kServiceCount);
} // namespace misodelay

#endif // MISODELAY_SCHEDULING_HPP
