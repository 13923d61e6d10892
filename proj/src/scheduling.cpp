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

#include "misodelay/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace misodelay
{
    void SystemConfig::validate() const
    {
        auto fail = [](const std::string& key, const std::string& why) {
            throw std::invalid_argument(key + ": " + why);
        };
        if (nt < 1)
            fail("nt", "must be >= 1");
        if (k_tot < 1)
            fail("k_tot", "must be >= 1");
        if (nd < 1)
            fail("nd", "must be >= 1");
        if (!(p_total > 0.0) || !std::isfinite(p_total))
            fail("p_total_db", "must give a finite positive linear power");
        if (!(alpha >= 0.0) || !std::isfinite(alpha))
            fail("alpha", "must be finite and >= 0");
        if (w < 0)
            fail("w", "must be >= 0");
    }

    double db_to_linear(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    std::pair<int, int> feasible_superframe_range(int k_tot, int nt)
    {
        if (k_tot < 1 || nt < 1)
            throw std::domain_error("feasible_superframe_range requires k_tot >= 1 and nt >= 1");
        return {(k_tot + nt - 1) / nt, k_tot};
    }

    SchedulePlan build_schedule(int k_tot, int t_super, int nt)
    {
        const auto [lo, hi] = feasible_superframe_range(k_tot, nt);
        if (t_super < lo)
            throw std::domain_error("t_super = " + std::to_string(t_super) + " is below ceil(k_tot / nt) = " +
                                    std::to_string(lo) + " (k_avg would exceed nt)");
        if (t_super > hi)
            throw std::domain_error("t_super = " + std::to_string(t_super) + " exceeds k_tot = " +
                                    std::to_string(hi) + " (k_avg would drop below 1)");

        SchedulePlan plan;
        plan.k_tot = k_tot;
        plan.t_super = t_super;
        plan.k_b = k_tot / t_super;
        if (k_tot % t_super == 0)
        {
            plan.k_a = plan.k_b;
            plan.t_a = t_super;
            plan.t_b = 0;
        }
        else
        {
            plan.k_a = plan.k_b + 1;
            plan.t_a = k_tot - t_super * plan.k_b;
            plan.t_b = t_super - plan.t_a;
        }
        return plan;
    }

    ServiceMixture service_mixture(const SchedulePlan& plan, double p_total, Scheme scheme, int nt)
    {
        if (!(p_total > 0.0))
            throw std::domain_error("service_mixture requires p_total > 0");
        ServiceMixture mix;
        auto add_slot_type = [&](int slots, int users) {
            if (slots == 0)
                return;
            const double p_type = static_cast<double>(users) * slots / plan.k_tot;
            const double rho = p_total / users;
            for (const auto& e : dof_assignment(scheme, nt, users).entries)
                mix.components.push_back({p_type * e.prob, rho, e.m, users});
        };
        add_slot_type(plan.t_a, plan.k_a);
        add_slot_type(plan.t_b, plan.k_b);
        return mix;
    }

    void draw_assignment_into(const SchedulePlan& plan, RandomStream& rng, std::vector<int>& user_order,
                              std::vector<int>& slot_sizes)
    {
        user_order.resize(static_cast<std::size_t>(plan.k_tot));
        std::iota(user_order.begin(), user_order.end(), 0);
        std::shuffle(user_order.begin(), user_order.end(), rng);

        slot_sizes.assign(static_cast<std::size_t>(plan.t_a), plan.k_a);
        slot_sizes.insert(slot_sizes.end(), static_cast<std::size_t>(plan.t_b), plan.k_b);
        std::shuffle(slot_sizes.begin(), slot_sizes.end(), rng);
    }

    SuperframeAssignment draw_assignment(const SchedulePlan& plan, RandomStream& rng)
    {
        std::vector<int> order;
        std::vector<int> sizes;
        draw_assignment_into(plan, rng, order, sizes);

        SuperframeAssignment out;
        out.slots.reserve(sizes.size());
        auto it = order.begin();
        for (int size : sizes)
        {
            out.slots.emplace_back(it, it + size);
            it += size;
        }
        return out;
    }

    GroupSplit group_split(int w, int t_super, GroupWeighting weighting)
    {
        if (t_super < 1)
            throw std::domain_error("group_split requires t_super >= 1");
        if (w < 0)
            throw std::domain_error("group_split requires w >= 0");
        GroupSplit g;
        const int rem = w % t_super;
        g.j2 = w / t_super;
        g.j1 = g.j2 + (rem != 0 ? 1 : 0);
        if (rem == 0)
            return g;
        const double frac = static_cast<double>(rem) / t_super;
        if (weighting == GroupWeighting::kServiceCount)
        {
            g.p1 = frac;
            g.p2 = static_cast<double>(t_super - rem) / t_super;
        }
        else
        {
            g.p1 = static_cast<double>(t_super - rem) / t_super;
            g.p2 = frac;
        }
        return g;
    }
} // namespace misodelay
