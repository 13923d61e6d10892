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

#include "misodelay/snc_analysis.hpp"

#include "misodelay/special_functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace misodelay
{
    namespace
    {
        constexpr double kInf = std::numeric_limits<double>::infinity();
        constexpr double kCancellationThreshold = 1e-5;
        constexpr int kScanPoints = 200;
        constexpr double kGoldenTol = 1e-6;
    } // namespace

    double log_mellin_arrival(double alpha, int t_super, double s)
    {
        return alpha * t_super * s;
    }

    double service_exponent(double s, int nd)
    {
        return s * nd / std::numbers::ln2;
    }

    MellinEvaluation evaluate_mellin_service_component(double rho, int m, double s_tilde)
    {
        if (!(rho > 0.0) || m < 1 || !(s_tilde >= 0.0))
            throw std::domain_error("Mellin component requires rho > 0, m >= 1, s~ >= 0");
        if (s_tilde == 0.0)
            return {};

        const double x = 1.0 / rho;
        const double log_rho = std::log(rho);
        std::array<SignedLog, 64> terms{};
        if (m > static_cast<int>(terms.size()))
            throw std::domain_error("Mellin component supports m <= 64");
        for (int l = 0; l < m; ++l)
        {
            const double log_gamma_inc = upper_incomplete_gamma(m - l - s_tilde, x).log_magnitude;
            // C(m-1, l) / Gamma(m) = 1 / (l! (m-1-l)!)
            terms[static_cast<std::size_t>(l)] = {
                -ln_gamma(l + 1.0) - ln_gamma(static_cast<double>(m - l)) - (l + s_tilde) * log_rho + x +
                    log_gamma_inc,
                (l % 2 == 0) ? 1 : -1};
        }
        const auto sum = signed_log_sum(std::span<const SignedLog>(terms.data(), static_cast<std::size_t>(m)));
        const double ratio = sum.cancellation_ratio();
        if (sum.value.sign > 0 && ratio >= kCancellationThreshold)
            return {std::min(0.0, sum.value.log_abs), false, ratio};
        return {log_mellin_service_component_oracle(rho, m, s_tilde), true, sum.value.sign > 0 ? ratio : 0.0};
    }

    double log_mellin_service_component(double rho, int m, double s_tilde)
    {
        return evaluate_mellin_service_component(rho, m, s_tilde).log_value;
    }

    double log_mellin_service_component_oracle(double rho, int m, double s_tilde)
    {
        if (!(rho > 0.0) || m < 1 || !(s_tilde >= 0.0))
            throw std::domain_error("Mellin oracle requires rho > 0, m >= 1, s~ >= 0");
        const double lg = ln_gamma(m);
        const auto integrand = [=](double xi) {
            double l = -s_tilde * std::log1p(rho * xi) - xi - lg;
            if (m > 1)
                l += (m - 1) * std::log(xi);
            return std::exp(l);
        };
        return std::log(integrate_semi_infinite(integrand));
    }

    double log_mellin_service(const ServiceMixture& mix, double s, int nd)
    {
        if (mix.components.empty())
            throw std::domain_error("log_mellin_service requires a nonempty mixture");
        const double s_tilde = service_exponent(s, nd);
        std::array<double, 128> logs{};
        if (mix.components.size() > logs.size())
            throw std::domain_error("mixture too large");
        std::size_t i = 0;
        for (const auto& c : mix.components)
            logs[i++] = std::log(c.prob) + log_mellin_service_component(c.rho, c.m, s_tilde);
        return std::min(0.0, log_sum_exp(std::span<const double>(logs.data(), i)));
    }

    std::optional<double> log_kernel_from_transforms(double log_arrival, double log_service, int j)
    {
        const double exponent = log_arrival + log_service;
        if (!(exponent < 0.0))
            return std::nullopt;
        return j * log_service - log1m_exp(exponent);
    }

    std::optional<double> log_kernel(double s, int j, const ServiceMixture& mix, double alpha, int t_super, int nd)
    {
        if (!(s > 0.0) || j < 0)
            throw std::domain_error("log_kernel requires s > 0 and j >= 0");
        return log_kernel_from_transforms(log_mellin_arrival(alpha, t_super, s), log_mellin_service(mix, s, nd), j);
    }

    SOptimum optimize_s(const std::function<double(double)>& objective, double s_min, double s_max)
    {
        if (!(s_min > 0.0) || !(s_max > s_min))
            throw std::domain_error("optimize_s requires 0 < s_min < s_max");

        const double lo = std::log(s_min);
        const double hi = std::log(s_max);
        const double step = (hi - lo) / (kScanPoints - 1);
        auto eval = [&](double log_s) {
            const double v = objective(std::exp(log_s));
            return std::isnan(v) ? kInf : v;
        };

        int best = -1;
        double best_value = kInf;
        for (int i = 0; i < kScanPoints; ++i)
        {
            const double v = eval(lo + i * step);
            if (v < best_value)
            {
                best_value = v;
                best = i;
            }
        }
        SOptimum out;
        if (best < 0)
            return out;

        // golden section on the bracket around the best grid point
        constexpr double inv_phi = 0.6180339887498949;
        double a = lo + std::max(best - 1, 0) * step;
        double b = lo + std::min(best + 1, kScanPoints - 1) * step;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = eval(c);
        double fd = eval(d);
        while (b - a > kGoldenTol)
        {
            if (fc <= fd)
            {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = eval(c);
            }
            else
            {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = eval(d);
            }
        }
        double best_log_s = lo + best * step;
        for (const auto& [ls, v] : {std::pair{c, fc}, std::pair{d, fd}})
            if (v < best_value)
            {
                best_value = v;
                best_log_s = ls;
            }

        out.s = std::exp(best_log_s);
        out.value = best_value;
        out.finite = true;
        if (best == 0 && best_log_s - lo < 2.0 * kGoldenTol)
            out.boundary = SearchBoundary::kLower;
        else if (best == kScanPoints - 1 && hi - best_log_s < 2.0 * kGoldenTol)
            out.boundary = SearchBoundary::kUpper;
        return out;
    }

    DelayBoundResult delay_bound(const SystemConfig& config, int t_super, const DelayBoundOptions& options)
    {
        config.validate();
        const SchedulePlan plan = build_schedule(config.k_tot, t_super, config.nt);
        const ServiceMixture mix = service_mixture(plan, config.p_total, config.scheme, config.nt);
        const GroupSplit split = group_split(config.w, t_super, options.weighting);
        const double log_p1 = std::log(split.p1);
        const double log_p2 = split.p2 > 0.0 ? std::log(split.p2) : -kInf;

        struct Terms
        {
            double k1;
            double k2;
        };
        auto terms_at = [&](double s) -> std::optional<Terms> {
            const double la = log_mellin_arrival(config.alpha, t_super, s);
            const double ls = log_mellin_service(mix, s, config.nd);
            const auto k1 = log_kernel_from_transforms(la, ls, split.j1);
            if (!k1)
                return std::nullopt;
            return Terms{*k1, *log_kernel_from_transforms(la, ls, split.j2)};
        };
        auto objective = [&](double s) {
            const auto t = terms_at(s);
            if (!t)
                return kInf;
            return log_add_exp(log_p1 + t->k1, log_p2 + t->k2);
        };

        const SOptimum opt = optimize_s(objective, options.s_min, options.s_max);
        DelayBoundResult out;
        if (!opt.finite)
            return out;
        const auto t = terms_at(opt.s);
        out.stable = true;
        out.s_opt = opt.s;
        out.boundary = opt.boundary;
        out.log_kernel_j1 = t->k1;
        out.log_kernel_j2 = t->k2;
        out.log_pv_bound = std::min(0.0, opt.value);
        out.pv_bound = std::exp(out.log_pv_bound);
        return out;
    }

    double expected_service_rate(const SchedulePlan& plan, const ServiceMixture& mix, int nd)
    {
        double acc = 0.0;
        const QuadratureOptions q{.rel_tol = 1e-9};
        for (const auto& c : mix.components)
        {
            const double lg = ln_gamma(c.m);
            const auto integrand = [&](double xi) {
                double l = -xi - lg;
                if (c.m > 1)
                    l += (c.m - 1) * std::log(xi);
                return std::log2(1.0 + c.rho * xi) * std::exp(l);
            };
            acc += c.prob * integrate_semi_infinite(integrand, q);
        }
        return nd * acc / plan.t_super;
    }

    namespace
    {
        std::pair<int, int> sweep_range(const SystemConfig& config, const SweepOptions& options)
        {
            auto [lo, hi] = feasible_superframe_range(config.k_tot, config.nt);
            if (options.t_super_min)
                lo = std::max(lo, *options.t_super_min);
            if (options.t_super_max)
                hi = std::min(hi, *options.t_super_max);
            if (lo > hi)
                throw std::domain_error("sweep range contains no feasible superframe length");
            return {lo, hi};
        }

        SweepRow evaluate_row(const SystemConfig& config, int t_super, const DelayBoundOptions& bound)
        {
            SweepRow row;
            row.t_super = t_super;
            const SchedulePlan plan = build_schedule(config.k_tot, t_super, config.nt);
            row.k_avg = plan.k_avg();
            row.bound = delay_bound(config, t_super, bound);
            row.expected_rate =
                expected_service_rate(plan, service_mixture(plan, config.p_total, config.scheme, config.nt), config.nd);
            return row;
        }

        std::size_t find_argmin(const std::vector<SweepRow>& rows)
        {
            // walk from the largest t_super (smallest k_avg) so ties keep the smaller k_avg
            std::size_t best = rows.size() - 1;
            for (std::size_t i = rows.size(); i-- > 0;)
                if (rows[i].bound.log_pv_bound < rows[best].bound.log_pv_bound)
                    best = i;
            return best;
        }
    } // namespace

    SweepResult sweep_superframe(const SystemConfig& config, const SweepOptions& options)
    {
        config.validate();
        const auto [lo, hi] = sweep_range(config, options);
        SweepResult out;
        out.rows.resize(static_cast<std::size_t>(hi - lo + 1));
        std::exception_ptr failure;
        const int n = hi - lo + 1;

#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < n; ++i)
        {
            try
            {
                out.rows[static_cast<std::size_t>(i)] = evaluate_row(config, lo + i, options.bound);
            }
            catch (...)
            {
#pragma omp critical(misodelay_sweep_failure)
                if (!failure)
                    failure = std::current_exception();
            }
        }
        if (failure)
            std::rethrow_exception(failure);
        out.argmin = find_argmin(out.rows);
        return out;
    }

    SweepResult sweep_superframe_serial(const SystemConfig& config, const SweepOptions& options)
    {
        config.validate();
        const auto [lo, hi] = sweep_range(config, options);
        SweepResult out;
        for (int t = lo; t <= hi; ++t)
            out.rows.push_back(evaluate_row(config, t, options.bound));
        out.argmin = find_argmin(out.rows);
        return out;
    }
} // namespace misodelay
