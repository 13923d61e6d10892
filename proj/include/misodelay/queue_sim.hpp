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

#ifndef MISODELAY_QUEUE_SIM_HPP
#define MISODELAY_QUEUE_SIM_HPP

#include "misodelay/scheduling.hpp"

#include <cstdint>
#include <deque>
#include <vector>

namespace misodelay
{
    /// Delay histogram indexed by delay in slots.
    using DelayHistogram = std::vector<std::uint64_t>;

    /// Cumulative arrival/departure bookkeeping of one FIFO queue and its virtual delay
    ///   W(t) = inf{u >= 0 : A(0, t) <= D(0, t + u)}.
    /// Arrivals enter at the start of a slot and can leave in that same slot.
    class DelayTracker
    {
    public:
        explicit DelayTracker(DelayHistogram* histogram) : histogram_(histogram) {}

        /// Opens slot t: registers the target A(0, t). When record is false the
        /// delay of this slot is resolved but not added to the histogram.
        void begin_slot(std::int64_t t, bool record);
        void arrive(double bits);
        /// Drains up to capacity bits; returns what actually departed.
        double serve(double capacity);
        /// Closes slot t, resolving every target met by D(0, t + 1).
        void end_slot(std::int64_t t);
        /// Records pending recorded targets as censored at their elapsed delay.
        std::uint64_t censor_pending(std::int64_t t_end);

        double cumulative_arrivals() const { return arrivals_; }
        double cumulative_departures() const { return departures_; }
        double backlog() const { return arrivals_ - departures_; }
        std::size_t pending_recorded() const { return pending_recorded_; }

    private:
        struct Target
        {
            std::int64_t t;
            double arrivals;
            bool record;
        };

        void record_delay(std::int64_t delay);

        DelayHistogram* histogram_;
        std::deque<Target> pending_;
        std::size_t pending_recorded_ = 0;
        double arrivals_ = 0.0;
        double departures_ = 0.0;
    };

    /// Slots at which W(t) enters the histogram.
    enum class DelaySampling
    {
        kEverySlot,     ///< every slot, all superframe phases
        kSuperframeBoundary, ///< first slot of each superframe only (t = i T)
    };

    struct SimOptions
    {
        std::int64_t superframes = 100000; ///< measured superframes per replication
        int replications = 10;
        std::uint64_t seed = 1;
        int tracked_users = 0; ///< 0 tracks every user
        int warmup_superframes = 100;
        std::int64_t max_drain_superframes = 100000;
        DelaySampling sampling = DelaySampling::kEverySlot;
    };

    struct SimResult
    {
        std::int64_t slots_simulated = 0; ///< measured slots summed over replications
        int users_tracked = 0;
        DelayHistogram delay_histogram;
        int replications = 0;
        std::uint64_t seed = 0;

        std::vector<DelayHistogram> replication_histograms;
        /// Service draws per component of service_mixture(plan, ...), same order.
        std::vector<std::uint64_t> component_draws;
        double service_bits_total = 0.0;
        std::uint64_t censored = 0;

        std::uint64_t total_samples() const;
    };

    /// Monte Carlo of the per-user queues under round-robin scheduling; replications
    /// run in parallel (OpenMP), each on its own substream of the master seed.
    SimResult simulate(const SystemConfig& config, int t_super, const SimOptions& options);

    /// Serial reference of simulate; identical output.
    SimResult simulate_serial(const SystemConfig& config, int t_super, const SimOptions& options);

    struct PvEstimate
    {
        double estimate = 0.0;
        double ci95 = 0.0; ///< normal-approximation half-width across replications
        bool has_ci = false;
    };

    /// Fraction of recorded delays strictly greater than w.
    PvEstimate empirical_pv(const SimResult& result, int w);
} // namespace misodelay

#endif // MISODELAY_QUEUE_SIM_HPP
