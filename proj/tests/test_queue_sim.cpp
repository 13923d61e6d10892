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

#include "doctest.h"
#include "misodelay/queue_sim.hpp"
#include "misodelay/random.hpp"
#include "misodelay/snc_analysis.hpp"
#include "misodelay/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

using namespace misodelay;

namespace
{
    // W(t) straight from the cumulative definition with
    // A(0, t) = sum_{tau < t} a(tau) and D(0, t) = sum_{tau < t} d(tau).
    std::vector<std::int64_t> brute_force_delays(const std::vector<double>& a, const std::vector<double>& d)
    {
        const std::size_t n = a.size();
        std::vector<double> A(n + 1, 0.0), D(n + 1, 0.0);
        for (std::size_t t = 0; t < n; ++t)
        {
            A[t + 1] = A[t] + a[t];
            D[t + 1] = D[t] + d[t];
        }
        std::vector<std::int64_t> w;
        for (std::size_t t = 0; t < n; ++t)
        {
            std::size_t u = 0;
            while (t + u <= n && A[t] > D[t + u] * (1.0 + 1e-12) + 1e-9)
                ++u;
            w.push_back(t + u <= n ? static_cast<std::int64_t>(u) : -1);
        }
        return w;
    }

    SystemConfig small_config(double alpha)
    {
        return SystemConfig{2, 4, 100, db_to_linear(10.0), alpha, 0, Scheme::kZfbf};
    }
} // namespace

TEST_CASE("hand trace: T = 2, service 10 in even slots, alpha = 3")
{
    DelayHistogram h;
    DelayTracker q(&h);
    std::vector<double> departed;
    for (std::int64_t t = 0; t < 10; ++t)
    {
        q.begin_slot(t, t >= 2); // first superframe is warm-up
        q.arrive(3.0);
        departed.push_back(t % 2 == 0 ? q.serve(10.0) : 0.0);
        q.end_slot(t);
    }
    CHECK(q.censor_pending(10) == 0);
    // W(2..9) = 1, 0, 1, 0, 1, 0, 1, 0
    REQUIRE(h.size() == 2);
    CHECK(h[0] == 4);
    CHECK(h[1] == 4);
    CHECK(departed[0] == 3.0);
    CHECK(departed[2] == 6.0);

    SimResult r;
    r.slots_simulated = 8;
    r.delay_histogram = h;
    CHECK(empirical_pv(r, 0).estimate == 0.5);
    CHECK(empirical_pv(r, 1).estimate == 0.0);
    CHECK_FALSE(empirical_pv(r, 0).has_ci);
}

TEST_CASE("tracker reproduces the cumulative delay definition")
{
    auto rng = make_stream(31, StreamPurpose::kValidation, 0);
    std::exponential_distribution<double> service(1.0 / 9.0);
    std::bernoulli_distribution scheduled(0.3);
    for (int rep = 0; rep < 20; ++rep)
    {
        const std::size_t n = 3000;
        DelayHistogram h;
        DelayTracker q(&h);
        std::vector<double> a(n, 2.5), d(n, 0.0);
        double prev_dep = 0.0;
        for (std::size_t t = 0; t < n; ++t)
        {
            q.begin_slot(static_cast<std::int64_t>(t), true);
            q.arrive(a[t]);
            if (scheduled(rng))
            {
                const double cap = service(rng);
                const double backlog = q.backlog();
                d[t] = q.serve(cap);
                // work conservation
                CHECK(d[t] == doctest::Approx(std::min(backlog, cap)).epsilon(1e-12));
            }
            q.end_slot(static_cast<std::int64_t>(t));
            REQUIRE(q.cumulative_departures() <= q.cumulative_arrivals());
            REQUIRE(q.cumulative_departures() >= prev_dep);
            prev_dep = q.cumulative_departures();
        }
        const std::uint64_t censored = q.censor_pending(static_cast<std::int64_t>(n));

        DelayHistogram want;
        std::uint64_t unresolved = 0;
        const auto delays = brute_force_delays(a, d);
        for (std::size_t t = 0; t < n; ++t)
        {
            std::int64_t w = delays[t];
            if (w < 0)
            {
                // censored at the elapsed delay
                ++unresolved;
                w = static_cast<std::int64_t>(n - t);
            }
            if (want.size() <= static_cast<std::size_t>(w))
                want.resize(static_cast<std::size_t>(w) + 1, 0);
            ++want[static_cast<std::size_t>(w)];
        }
        CHECK(censored == unresolved);
        CHECK(h == want);
    }
}

TEST_CASE("zero load never delays")
{
    SimOptions opt;
    opt.superframes = 2000;
    opt.replications = 3;
    const SimResult r = simulate(small_config(0.0), 2, opt);
    REQUIRE(r.delay_histogram.size() == 1);
    CHECK(r.delay_histogram[0] == r.total_samples());
    CHECK(empirical_pv(r, 0).estimate == 0.0);
    CHECK(empirical_pv(r, 0).ci95 == 0.0);
}

TEST_CASE("one sample per tracked user per slot")
{
    SimOptions opt;
    opt.superframes = 5000;
    opt.replications = 4;
    for (int tracked : {0, 1, 3})
    {
        opt.tracked_users = tracked;
        const SimResult r = simulate(small_config(40.0), 3, opt);
        const int users = tracked == 0 ? 4 : tracked;
        CHECK(r.users_tracked == users);
        CHECK(r.slots_simulated == 5000 * 3 * 4);
        CHECK(r.total_samples() == static_cast<std::uint64_t>(r.slots_simulated) * static_cast<std::uint64_t>(users));
        // fairness: every tracked user is served exactly once per measured superframe
        const std::uint64_t draws = std::accumulate(r.component_draws.begin(), r.component_draws.end(), std::uint64_t{0});
        CHECK(draws == static_cast<std::uint64_t>(5000 * 4 * users));
    }
}

TEST_CASE("superframe-boundary sampling takes one sample per superframe")
{
    SimOptions opt;
    opt.superframes = 3000;
    opt.replications = 2;
    opt.sampling = DelaySampling::kSuperframeBoundary;
    const SimResult r = simulate(small_config(40.0), 3, opt);
    CHECK(r.total_samples() == 3000u * 2u * 4u);
}

TEST_CASE("parallel and serial simulations agree; seeds matter")
{
    SimOptions opt;
    opt.superframes = 20000;
    opt.replications = 5;
    opt.seed = 99;
    const SystemConfig c{4, 8, 50, db_to_linear(10.0), 60.0, 0, Scheme::kZfDpc};
    const SimResult a = simulate(c, 3, opt);
    const SimResult b = simulate_serial(c, 3, opt);
    CHECK(a.delay_histogram == b.delay_histogram);
    CHECK(a.replication_histograms == b.replication_histograms);
    CHECK(a.component_draws == b.component_draws);
    CHECK(a.service_bits_total == b.service_bits_total);

    const SimResult again = simulate(c, 3, opt);
    CHECK(again.delay_histogram == a.delay_histogram);

    opt.seed = 100;
    CHECK(simulate(c, 3, opt).delay_histogram != a.delay_histogram);
}

TEST_CASE("simulated services follow the service mixture")
{
    for (Scheme scheme : {Scheme::kZfbf, Scheme::kZfDpc})
    {
        const SystemConfig c{4, 8, 50, db_to_linear(10.0), 30.0, 0, scheme};
        const int t = 3;
        SimOptions opt;
        opt.superframes = 50000;
        opt.replications = 2;
        opt.seed = 5;
        const SimResult r = simulate(c, t, opt);
        const SchedulePlan plan = build_schedule(c.k_tot, t, c.nt);
        const ServiceMixture mix = service_mixture(plan, c.p_total, c.scheme, c.nt);
        REQUIRE(r.component_draws.size() == mix.components.size());
        std::vector<double> probs;
        for (const auto& comp : mix.components)
            probs.push_back(comp.prob);
        const double stat = chi_square_statistic(r.component_draws, probs);
        const int df = static_cast<int>(probs.size()) - 1;
        if (df > 0)
            CHECK(chi_square_sf(stat, df) > 0.01);

        // mean service per draw against the analytic expectation
        const double draws = static_cast<double>(
            std::accumulate(r.component_draws.begin(), r.component_draws.end(), std::uint64_t{0}));
        const double mean_bits = r.service_bits_total / draws;
        CHECK(mean_bits == doctest::Approx(expected_service_rate(plan, mix, c.nd) * t).epsilon(0.01));
    }
}

TEST_CASE("chi-square helpers")
{
    CHECK(chi_square_sf(0.0, 3) == 1.0);
    // df = 2 has survival exp(-x / 2)
    CHECK(chi_square_sf(3.0, 2) == doctest::Approx(std::exp(-1.5)).epsilon(1e-13));
    const std::vector<std::uint64_t> obs{25, 25, 50};
    const std::vector<double> p{0.25, 0.25, 0.5};
    CHECK(chi_square_statistic(obs, p) == 0.0);
}

TEST_CASE("empirical bound dominance on a small configuration")
{
    SystemConfig c = small_config(0.0);
    const int t = 2;
    const SchedulePlan plan = build_schedule(c.k_tot, t, c.nt);
    c.alpha = 0.9 * expected_service_rate(plan, service_mixture(plan, c.p_total, c.scheme, c.nt), c.nd);
    SimOptions opt;
    opt.superframes = 200000;
    opt.replications = 4;
    opt.seed = 17;
    const SimResult r = simulate(c, t, opt);
    double prev = 1.0;
    for (int w : {4, 8, 16})
    {
        c.w = w;
        const PvEstimate e = empirical_pv(r, w);
        const DelayBoundResult b = delay_bound(c, t);
        INFO("w=" << w << " empirical=" << e.estimate << " bound=" << b.pv_bound);
        CHECK(b.stable);
        CHECK(e.estimate <= b.pv_bound + 3.0 * e.ci95);
        CHECK(e.estimate <= prev);
        prev = e.estimate;
    }
}

TEST_CASE("empirical_pv edge cases")
{
    SimResult r;
    r.slots_simulated = 4;
    r.delay_histogram = {4};
    r.replication_histograms = {{2}, {2}};
    const PvEstimate e = empirical_pv(r, 0);
    CHECK(e.estimate == 0.0);
    CHECK(e.ci95 == 0.0);
    CHECK(e.has_ci);
    CHECK_THROWS_AS(empirical_pv(r, -1), std::domain_error);
    SimResult empty;
    CHECK_THROWS_AS(empirical_pv(empty, 0), std::domain_error);
}

TEST_CASE("empirical_pv is nonincreasing in w")
{
    SimOptions opt;
    opt.superframes = 20000;
    opt.replications = 3;
    const SimResult r = simulate(small_config(70.0), 4, opt);
    double prev = 1.0;
    for (int w = 0; w < 60; ++w)
    {
        const double v = empirical_pv(r, w).estimate;
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("simulate rejects bad input")
{
    SimOptions opt;
    CHECK_THROWS_AS(simulate(small_config(1.0), 10, opt), std::domain_error);
    opt.replications = 0;
    CHECK_THROWS(simulate(small_config(1.0), 2, opt));
}
