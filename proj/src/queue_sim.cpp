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

#include "misodelay/queue_sim.hpp"

#include "misodelay/random.hpp"

#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <stdexcept>

namespace misodelay
{
    void DelayTracker::record_delay(std::int64_t delay)
    {
        const auto d = static_cast<std::size_t>(delay);
        if (histogram_->size() <= d)
            histogram_->resize(d + 1, 0);
        ++(*histogram_)[d];
    }

    void DelayTracker::begin_slot(std::int64_t t, bool record)
    {
        if (pending_.empty() && arrivals_ <= departures_)
        {
            if (record)
                record_delay(0);
            return;
        }
        pending_.push_back({t, arrivals_, record});
        if (record)
            ++pending_recorded_;
    }

    void DelayTracker::arrive(double bits)
    {
        arrivals_ += bits;
    }

    double DelayTracker::serve(double capacity)
    {
        const double backlog = arrivals_ - departures_;
        if (capacity >= backlog)
        {
            // snap to the arrival counter so that emptied queues compare exactly
            departures_ = arrivals_;
            return backlog;
        }
        departures_ += capacity;
        return capacity;
    }

    void DelayTracker::end_slot(std::int64_t t)
    {
        while (!pending_.empty() && pending_.front().arrivals <= departures_)
        {
            const Target& front = pending_.front();
            if (front.record)
            {
                record_delay(t + 1 - front.t);
                --pending_recorded_;
            }
            pending_.pop_front();
        }
    }

    std::uint64_t DelayTracker::censor_pending(std::int64_t t_end)
    {
        std::uint64_t n = 0;
        for (const auto& target : pending_)
            if (target.record)
            {
                record_delay(t_end - target.t);
                ++n;
            }
        pending_.clear();
        pending_recorded_ = 0;
        return n;
    }

    std::uint64_t SimResult::total_samples() const
    {
        return std::accumulate(delay_histogram.begin(), delay_histogram.end(), std::uint64_t{0});
    }

    namespace
    {
        struct ReplicationOutput
        {
            DelayHistogram histogram;
            std::vector<std::uint64_t> component_draws;
            double service_bits = 0.0;
            std::uint64_t censored = 0;
        };

        void check_inputs(const SystemConfig& config, int t_super, const SimOptions& options)
        {
            config.validate();
            build_schedule(config.k_tot, t_super, config.nt);
            if (options.superframes < 1)
                throw std::invalid_argument("superframes must be >= 1");
            if (options.replications < 1)
                throw std::invalid_argument("replications must be >= 1");
            if (options.tracked_users < 0 || options.tracked_users > config.k_tot)
                throw std::invalid_argument("tracked_users must lie in [0, k_tot]");
            if (options.warmup_superframes < 0)
                throw std::invalid_argument("warmup_superframes must be >= 0");
        }

        ReplicationOutput run_replication(const SystemConfig& config, int t_super, const SimOptions& options,
                                          int replication)
        {
            const SchedulePlan plan = build_schedule(config.k_tot, t_super, config.nt);
            const ServiceMixture mix = service_mixture(plan, config.p_total, config.scheme, config.nt);
            const int tracked = options.tracked_users == 0 ? config.k_tot : options.tracked_users;
            const int nt = config.nt;

            // component index by (users in slot, m)
            std::vector<int> component_of(static_cast<std::size_t>((nt + 1) * (nt + 1)), -1);
            for (std::size_t i = 0; i < mix.components.size(); ++i)
            {
                const auto& c = mix.components[i];
                component_of[static_cast<std::size_t>(c.users_in_slot * (nt + 1) + c.m)] = static_cast<int>(i);
            }

            ReplicationOutput out;
            out.component_draws.assign(mix.components.size(), 0);

            RandomStream rng = make_stream(options.seed, StreamPurpose::kSimulation,
                                           static_cast<std::uint64_t>(replication));
            std::vector<std::gamma_distribution<double>> gain(static_cast<std::size_t>(nt + 1));
            for (int m = 1; m <= nt; ++m)
                gain[static_cast<std::size_t>(m)] = std::gamma_distribution<double>(m, 1.0);

            std::vector<DelayTracker> queues(static_cast<std::size_t>(tracked), DelayTracker(&out.histogram));
            std::vector<int> order;
            std::vector<int> sizes;
            std::vector<int> slot_of(static_cast<std::size_t>(tracked));
            std::vector<int> size_of(static_cast<std::size_t>(tracked));
            std::vector<int> position_of(static_cast<std::size_t>(tracked));

            std::int64_t t = 0;
            auto run_superframe = [&](bool record) {
                draw_assignment_into(plan, rng, order, sizes);
                std::size_t offset = 0;
                for (int slot = 0; slot < t_super; ++slot)
                {
                    const int size = sizes[static_cast<std::size_t>(slot)];
                    for (int pos = 0; pos < size; ++pos)
                    {
                        const int user = order[offset + static_cast<std::size_t>(pos)];
                        if (user < tracked)
                        {
                            slot_of[static_cast<std::size_t>(user)] = slot;
                            size_of[static_cast<std::size_t>(user)] = size;
                            position_of[static_cast<std::size_t>(user)] = pos;
                        }
                    }
                    offset += static_cast<std::size_t>(size);
                }

                for (int slot = 0; slot < t_super; ++slot, ++t)
                {
                    const bool sample =
                        record && (options.sampling == DelaySampling::kEverySlot || slot == 0);
                    for (int u = 0; u < tracked; ++u)
                    {
                        auto& q = queues[static_cast<std::size_t>(u)];
                        q.begin_slot(t, sample);
                        q.arrive(config.alpha);
                        if (slot_of[static_cast<std::size_t>(u)] == slot)
                        {
                            const int k = size_of[static_cast<std::size_t>(u)];
                            const int m = config.scheme == Scheme::kZfbf
                                              ? nt - k + 1
                                              : nt - position_of[static_cast<std::size_t>(u)];
                            const double xi = gain[static_cast<std::size_t>(m)](rng);
                            const double bits = service_bits(config.p_total / k, xi, config.nd);
                            q.serve(bits);
                            if (record)
                            {
                                ++out.component_draws[static_cast<std::size_t>(
                                    component_of[static_cast<std::size_t>(k * (nt + 1) + m)])];
                                out.service_bits += bits;
                            }
                        }
                        q.end_slot(t);
                    }
                }
            };

            for (int i = 0; i < options.warmup_superframes; ++i)
                run_superframe(false);
            for (std::int64_t i = 0; i < options.superframes; ++i)
                run_superframe(true);

            auto any_pending = [&] {
                for (const auto& q : queues)
                    if (q.pending_recorded() > 0)
                        return true;
                return false;
            };
            for (std::int64_t i = 0; i < options.max_drain_superframes && any_pending(); ++i)
                run_superframe(false);
            for (auto& q : queues)
                out.censored += q.censor_pending(t);
            return out;
        }

        SimResult merge(const SystemConfig& config, int t_super, const SimOptions& options,
                        std::vector<ReplicationOutput>& reps)
        {
            SimResult r;
            r.users_tracked = options.tracked_users == 0 ? config.k_tot : options.tracked_users;
            r.replications = options.replications;
            r.seed = options.seed;
            r.slots_simulated = options.superframes * t_super * options.replications;
            r.component_draws.assign(reps.front().component_draws.size(), 0);
            for (auto& rep : reps)
            {
                if (r.delay_histogram.size() < rep.histogram.size())
                    r.delay_histogram.resize(rep.histogram.size(), 0);
                for (std::size_t d = 0; d < rep.histogram.size(); ++d)
                    r.delay_histogram[d] += rep.histogram[d];
                for (std::size_t i = 0; i < rep.component_draws.size(); ++i)
                    r.component_draws[i] += rep.component_draws[i];
                r.service_bits_total += rep.service_bits;
                r.censored += rep.censored;
                r.replication_histograms.push_back(std::move(rep.histogram));
            }
            return r;
        }
    } // namespace

    SimResult simulate(const SystemConfig& config, int t_super, const SimOptions& options)
    {
        check_inputs(config, t_super, options);
        std::vector<ReplicationOutput> reps(static_cast<std::size_t>(options.replications));
        std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < options.replications; ++i)
        {
            try
            {
                reps[static_cast<std::size_t>(i)] = run_replication(config, t_super, options, i);
            }
            catch (...)
            {
#pragma omp critical(misodelay_sim_failure)
                if (!failure)
                    failure = std::current_exception();
            }
        }
        if (failure)
            std::rethrow_exception(failure);
        return merge(config, t_super, options, reps);
    }

    SimResult simulate_serial(const SystemConfig& config, int t_super, const SimOptions& options)
    {
        check_inputs(config, t_super, options);
        std::vector<ReplicationOutput> reps;
        for (int i = 0; i < options.replications; ++i)
            reps.push_back(run_replication(config, t_super, options, i));
        return merge(config, t_super, options, reps);
    }

    PvEstimate empirical_pv(const SimResult& result, int w)
    {
        if (result.slots_simulated <= 0)
            throw std::domain_error("empirical_pv requires a nonempty simulation");
        if (w < 0)
            throw std::domain_error("empirical_pv requires w >= 0");

        auto exceed = [w](const DelayHistogram& h) {
            std::uint64_t n = 0;
            for (std::size_t d = static_cast<std::size_t>(w) + 1; d < h.size(); ++d)
                n += h[d];
            return n;
        };
        auto total = [](const DelayHistogram& h) {
            return std::accumulate(h.begin(), h.end(), std::uint64_t{0});
        };

        PvEstimate out;
        const std::uint64_t all = total(result.delay_histogram);
        if (all == 0)
            return out;
        out.estimate = static_cast<double>(exceed(result.delay_histogram)) / static_cast<double>(all);

        const auto& reps = result.replication_histograms;
        if (reps.size() < 2)
            return out;
        std::vector<double> p;
        for (const auto& h : reps)
        {
            const std::uint64_t n = total(h);
            p.push_back(n == 0 ? 0.0 : static_cast<double>(exceed(h)) / static_cast<double>(n));
        }
        const double mean = std::accumulate(p.begin(), p.end(), 0.0) / static_cast<double>(p.size());
        double ss = 0.0;
        for (double v : p)
            ss += (v - mean) * (v - mean);
        const double sd = std::sqrt(ss / static_cast<double>(p.size() - 1));
        out.ci95 = 1.96 * sd / std::sqrt(static_cast<double>(p.size()));
        out.has_ci = true;
        return out;
    }
} // namespace misodelay
