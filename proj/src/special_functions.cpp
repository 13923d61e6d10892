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

#include "misodelay/special_functions.hpp"

#include <algorithm>
#include <array>
#include <numbers>
#include <queue>
#include <vector>

namespace misodelay
{
    namespace
    {
        constexpr double kEps = std::numeric_limits<double>::epsilon();
        constexpr double kTiny = 1e-300;
        constexpr double kInf = std::numeric_limits<double>::infinity();

        // Stirling series for ln Gamma(z), z >= 10.
        double ln_gamma_stirling(double z)
        {
            const double inv = 1.0 / z;
            const double inv2 = inv * inv;
            // Bernoulli-number coefficients B_{2k} / (2k (2k - 1)), k = 1..8
            constexpr std::array<double, 8> c = {
                1.0 / 12.0, -1.0 / 360.0, 1.0 / 1260.0, -1.0 / 1680.0,
                1.0 / 1188.0, -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0};
            double series = 0.0;
            double p = inv;
            for (double ck : c)
            {
                series += ck * p;
                p *= inv2;
            }
            return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * std::numbers::pi) + series;
        }

        // zeta(k) for k = 2..kZetaCount+1
        constexpr int kZetaCount = 60;

        const std::array<double, kZetaCount>& zeta_table()
        {
            static const std::array<double, kZetaCount> table = [] {
                std::array<double, kZetaCount> t{};
                constexpr std::array<double, 9> low = {
                    1.6449340668482264365, 1.2020569031595942854, 1.0823232337111381915,
                    1.0369277551433699263, 1.0173430619844491397, 1.0083492773819228268,
                    1.0040773561979443394, 1.0020083928260822144, 1.0009945751278180853};
                for (int i = 0; i < kZetaCount; ++i)
                {
                    const int k = i + 2;
                    if (k <= 10)
                    {
                        t[i] = low[i];
                        continue;
                    }
                    double s = 0.0;
                    for (int n = 40; n >= 2; --n)
                        s += std::pow(static_cast<double>(n), -k);
                    t[i] = 1.0 + s;
                }
                return t;
            }();
            return table;
        }

        // ln Gamma(1 + a) for |a| <= 1/2 by its Taylor series about 1.
        double ln_gamma_1p_small(double a)
        {
            const auto& zeta = zeta_table();
            double sum = 0.0;
            double p = a; // holds -(-a)^k after the update below
            for (int i = 0; i < kZetaCount; ++i)
            {
                const int k = i + 2;
                p *= -a;
                const double term = zeta[i] * p / k;
                sum += term;
                if (std::abs(term) < kEps * 1e-3 * std::abs(sum))
                    break;
            }
            return -std::numbers::egamma * a - sum;
        }

        // (Gamma(1 + a) - 1) / a for |a| <= 1/2.
        double gamma1_minus_one_over_a(double a)
        {
            if (a == 0.0)
                return -std::numbers::egamma;
            return std::expm1(ln_gamma_1p_small(a)) / a;
        }

        // Series for the regularized lower gamma P(a, x), a > 0.
        double gamma_p_series(double a, double x)
        {
            double ap = a;
            double del = 1.0 / a;
            double sum = del;
            for (int n = 0; n < 100000; ++n)
            {
                ap += 1.0;
                del *= x / ap;
                sum += del;
                if (std::abs(del) < std::abs(sum) * kEps)
                    return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
            }
            throw NumericalError("gamma_p_series did not converge", sum, std::abs(del));
        }

        // log Gamma(a, x) via the Legendre continued fraction (modified Lentz).
        double log_gamma_cf(double a, double x)
        {
            double b = x + 1.0 - a;
            double c = 1.0 / kTiny;
            double d = 1.0 / b;
            double h = d;
            for (int i = 1; i < 100000; ++i)
            {
                const double an = -i * (i - a);
                b += 2.0;
                d = an * d + b;
                if (std::abs(d) < kTiny)
                    d = kTiny;
                c = b + an / c;
                if (std::abs(c) < kTiny)
                    c = kTiny;
                d = 1.0 / d;
                const double del = d * c;
                h *= del;
                if (std::abs(del - 1.0) < kEps)
                    return -x + a * std::log(x) + std::log(h);
            }
            throw NumericalError("incomplete gamma continued fraction did not converge", h, kInf);
        }

        // Gamma(a, x) for a in (-1/2, 1/2] and x of order one or less.
        double gamma_small_order(double a, double x)
        {
            const double lx = std::log(x);
            const double head = gamma1_minus_one_over_a(a) - (a == 0.0 ? lx : std::expm1(a * lx) / a);
            double tail = 0.0;
            double term = 1.0; // (-x)^k / k!
            for (int k = 1; k < 1000; ++k)
            {
                term *= -x / k;
                const double t = term / (a + k);
                tail += t;
                if (std::abs(t) < kEps * std::abs(tail))
                    break;
            }
            return head - std::exp(a * lx) * tail;
        }

        bool use_continued_fraction(double a, double x)
        {
            if (x >= 1.0 && x >= a + 1.0)
                return true;
            // Far into negative order the fraction converges in a handful of terms
            // and avoids thousands of recurrence steps.
            return a < -30.0;
        }
    } // namespace

    LogValue LogValue::from_linear(double v)
    {
        if (v < 0.0 || std::isnan(v))
            throw std::domain_error("LogValue requires a nonnegative value");
        return {v == 0.0 ? -kInf : std::log(v)};
    }

    SignedLogSum signed_log_sum(std::span<const SignedLog> terms)
    {
        SignedLogSum out;
        for (const auto& t : terms)
            if (t.sign != 0)
                out.log_max_term = std::max(out.log_max_term, t.log_abs);
        if (std::isinf(out.log_max_term))
            return out;
        double acc = 0.0;
        for (const auto& t : terms)
            if (t.sign != 0)
                acc += t.sign * std::exp(t.log_abs - out.log_max_term);
        if (acc == 0.0)
            return out;
        out.value.sign = acc > 0.0 ? 1 : -1;
        out.value.log_abs = out.log_max_term + std::log(std::abs(acc));
        return out;
    }

    double log_sum_exp(std::span<const double> xs)
    {
        double mx = -kInf;
        for (double x : xs)
            mx = std::max(mx, x);
        if (std::isinf(mx))
            return mx;
        double acc = 0.0;
        for (double x : xs)
            acc += std::exp(x - mx);
        return mx + std::log(acc);
    }

    double log_add_exp(double a, double b)
    {
        if (a < b)
            std::swap(a, b);
        if (std::isinf(b) && b < 0.0)
            return a;
        return a + std::log1p(std::exp(b - a));
    }

    double log1m_exp(double x)
    {
        if (x >= 0.0)
            throw std::domain_error("log1m_exp requires x < 0");
        // split point -ln 2 per Maechler's note on log(1 - exp(x))
        return x > -std::numbers::ln2 ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
    }

    double ln_gamma(double a)
    {
        if (!(a > 0.0) || std::isinf(a))
            throw std::domain_error("ln_gamma requires a finite a > 0, got " + std::to_string(a));
        if (a >= 10.0)
            return ln_gamma_stirling(a);
        double shift = 1.0;
        double z = a;
        while (z < 10.0)
        {
            shift *= z;
            z += 1.0;
        }
        return ln_gamma_stirling(z) - std::log(shift);
    }

    LogValue upper_incomplete_gamma(double a, double x)
    {
        if (!(x > 0.0) || std::isinf(x))
            throw std::domain_error("upper_incomplete_gamma requires x > 0");
        if (!std::isfinite(a))
            throw std::domain_error("upper_incomplete_gamma requires a finite order");

        if (use_continued_fraction(a, x))
            return {log_gamma_cf(a, x)};

        if (a > 0.5)
            return {ln_gamma(a) + std::log1p(-gamma_p_series(a, x))};

        const double steps = std::floor(0.5 - a);
        const double a0 = a + steps;
        const double g0 = gamma_small_order(a0, x);
        if (!(g0 > 0.0))
            throw NumericalError("incomplete gamma lost all precision near order " + std::to_string(a0), g0, kInf);

        double log_g = std::log(g0);
        const double lx = std::log(x);
        for (int i = 1; i <= static_cast<int>(steps); ++i)
        {
            const double ai = a0 - i; // always <= -1/2
            const double log_lead = ai * lx - x;
            // Gamma(ai, x) = (x^ai e^-x - Gamma(ai + 1, x)) / (-ai)
            const double ratio = std::exp(log_g - log_lead);
            if (!(ratio < 1.0))
                throw NumericalError("downward incomplete gamma recurrence lost positivity", ratio, kInf);
            log_g = log_lead + std::log1p(-ratio) - std::log(-ai);
        }
        return {log_g};
    }

    double gamma_q(double a, double x)
    {
        if (!(a > 0.0))
            throw std::domain_error("gamma_q requires a > 0");
        if (x < 0.0)
            throw std::domain_error("gamma_q requires x >= 0");
        if (x == 0.0)
            return 1.0;
        if (x < a + 1.0)
            return 1.0 - gamma_p_series(a, x);
        return std::exp(log_gamma_cf(a, x) - ln_gamma(a));
    }

    double gamma_p(double a, double x)
    {
        if (!(a > 0.0))
            throw std::domain_error("gamma_p requires a > 0");
        if (x < 0.0)
            throw std::domain_error("gamma_p requires x >= 0");
        if (x == 0.0)
            return 0.0;
        if (x < a + 1.0)
            return gamma_p_series(a, x);
        return -std::expm1(log_gamma_cf(a, x) - ln_gamma(a));
    }

    // ---------------------------------------------------------------------
    // Adaptive Gauss-Kronrod quadrature

    namespace
    {
        constexpr std::array<double, 8> kXgk = {
            0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
            0.207784955007898467600689403773245, 0.0};
        constexpr std::array<double, 8> kWgk = {
            0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
        constexpr std::array<double, 4> kWg = {
            0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
            0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

        struct Segment
        {
            double lo;
            double hi;
            double integral;
            double error;

            bool operator<(const Segment& o) const { return error < o.error; }
        };

        Segment gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi)
        {
            const double center = 0.5 * (lo + hi);
            const double half = 0.5 * (hi - lo);
            std::array<double, 7> f1{};
            std::array<double, 7> f2{};

            const double fc = f(center);
            double resg = fc * kWg[3];
            double resk = fc * kWgk[7];
            double resabs = std::abs(resk);
            for (int j = 0; j < 7; ++j)
            {
                const double dx = half * kXgk[j];
                f1[j] = f(center - dx);
                f2[j] = f(center + dx);
                const double fsum = f1[j] + f2[j];
                resk += kWgk[j] * fsum;
                resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
                if (j % 2 == 1)
                    resg += kWg[j / 2] * fsum;
            }
            const double reskh = resk * 0.5;
            double resasc = kWgk[7] * std::abs(fc - reskh);
            for (int j = 0; j < 7; ++j)
                resasc += kWgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

            const double result = resk * half;
            resabs *= std::abs(half);
            resasc *= std::abs(half);
            double err = std::abs((resk - resg) * half);
            if (resasc != 0.0 && err != 0.0)
                err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
            if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps))
                err = std::max(50.0 * kEps * resabs, err);
            if (!std::isfinite(result) || !std::isfinite(err))
                throw NumericalError("integrand is not finite on [" + std::to_string(lo) + ", " +
                                         std::to_string(hi) + "]",
                                     result, kInf);
            return {lo, hi, result, err};
        }

        double adaptive(const std::function<double(double)>& f, std::span<const double> breaks,
                        const QuadratureOptions& options)
        {
            std::priority_queue<Segment> heap;
            std::size_t evaluations = 0;
            double total = 0.0;
            double total_err = 0.0;
            double frozen = 0.0;
            double frozen_err = 0.0;

            for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
            {
                auto seg = gauss_kronrod_15(f, breaks[i], breaks[i + 1]);
                evaluations += 15;
                total += seg.integral;
                total_err += seg.error;
                heap.push(seg);
            }

            while (!heap.empty())
            {
                if (total_err <= options.rel_tol * std::abs(total))
                    break;
                if (evaluations + 30 > options.max_evaluations)
                    throw NumericalError("quadrature exceeded its evaluation budget", total, total_err);

                const Segment worst = heap.top();
                heap.pop();
                const double mid = 0.5 * (worst.lo + worst.hi);
                if (!(mid > worst.lo && mid < worst.hi))
                {
                    // interval exhausted at machine resolution; keep its estimate
                    frozen += worst.integral;
                    frozen_err += worst.error;
                    continue;
                }
                const auto left = gauss_kronrod_15(f, worst.lo, mid);
                const auto right = gauss_kronrod_15(f, mid, worst.hi);
                evaluations += 30;
                total += left.integral + right.integral - worst.integral;
                total_err += left.error + right.error - worst.error;
                heap.push(left);
                heap.push(right);
            }

            // re-sum to shed the drift of incremental updates
            double sum = frozen;
            double err = frozen_err;
            while (!heap.empty())
            {
                sum += heap.top().integral;
                err += heap.top().error;
                heap.pop();
            }
            if (err > options.rel_tol * std::abs(sum) && err > 1e3 * kEps * std::abs(sum))
                throw NumericalError("quadrature could not reach the requested tolerance", sum, err);
            return sum;
        }
    } // namespace

    double integrate_semi_infinite(const std::function<double(double)>& f, const QuadratureOptions& options)
    {
        const auto mapped = [&f](double t) {
            const double one_minus = 1.0 - t;
            const double x = t / one_minus;
            const double v = f(x);
            return v == 0.0 ? 0.0 : v / (one_minus * one_minus);
        };
        std::vector<double> breaks;
        breaks.reserve(66);
        breaks.push_back(0.0);
        for (int k = -50; k <= 12; ++k)
        {
            const double x = std::ldexp(1.0, k);
            breaks.push_back(x / (1.0 + x));
        }
        breaks.push_back(1.0);
        return adaptive(mapped, breaks, options);
    }

    double integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureOptions& options)
    {
        if (!(hi > lo))
            throw std::domain_error("integrate_interval requires lo < hi");
        const std::array<double, 2> breaks = {lo, hi};
        return adaptive(f, breaks, options);
    }
} // namespace misodelay
