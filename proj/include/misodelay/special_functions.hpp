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

#ifndef MISODELAY_SPECIAL_FUNCTIONS_HPP
#define MISODELAY_SPECIAL_FUNCTIONS_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace misodelay
{
    /// A strictly positive real stored as its natural logarithm. Zero is -inf.
    struct LogValue
    {
        double log_magnitude = -std::numeric_limits<double>::infinity();

        static LogValue from_linear(double v);
        static LogValue zero() { return {}; }

        double value() const { return std::exp(log_magnitude); }
        bool is_zero() const { return std::isinf(log_magnitude) && log_magnitude < 0.0; }

        friend LogValue operator*(LogValue a, LogValue b) { return {a.log_magnitude + b.log_magnitude}; }
        friend LogValue operator/(LogValue a, LogValue b) { return {a.log_magnitude - b.log_magnitude}; }
    };

    /// A real number carried as (sign, log|x|), used for alternating sums.
    struct SignedLog
    {
        double log_abs = -std::numeric_limits<double>::infinity();
        int sign = 0; // -1, 0 or +1
    };

    /// Result of summing signed log-domain terms.
    struct SignedLogSum
    {
        SignedLog value;
        double log_max_term = -std::numeric_limits<double>::infinity();

        /// |sum| / max |term|; small values indicate cancellation.
        double cancellation_ratio() const
        {
            if (value.sign == 0)
                return 0.0;
            return std::exp(value.log_abs - log_max_term);
        }
    };

    SignedLogSum signed_log_sum(std::span<const SignedLog> terms);

    /// log(sum_i exp(x_i)); -inf for an empty span.
    double log_sum_exp(std::span<const double> xs);

    /// log(exp(a) + exp(b))
    double log_add_exp(double a, double b);

    /// log(1 - exp(x)) for x < 0.
    double log1m_exp(double x);

    /// Thrown when an iterative numerical method exhausts its budget.
    class NumericalError : public std::runtime_error
    {
    public:
        NumericalError(const std::string& what, double best_estimate, double error_bound)
            : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound)
        {
        }

        double best_estimate() const { return best_estimate_; }
        double error_bound() const { return error_bound_; }

    private:
        double best_estimate_;
        double error_bound_;
    };

    /// ln Gamma(a) for a > 0. Throws std::domain_error otherwise.
    double ln_gamma(double a);

    /// Upper incomplete gamma Gamma(a, x) = int_x^inf t^{a-1} e^{-t} dt, returned in
    /// the log domain. Any real order a is accepted; x must be positive.
    ///
    /// Regimes:
    ///   - continued fraction when x >= 1 and x >= a + 1, or when a is strongly negative;
    ///   - 1 - P(a, x) from the power series when a > 1/2;
    ///   - otherwise a cancellation-free expansion at a0 = a + n in (-1/2, 1/2]
    ///     followed by n steps of the downward recurrence
    ///     Gamma(a, x) = (Gamma(a + 1, x) - x^a e^{-x}) / a.
    LogValue upper_incomplete_gamma(double a, double x);

    /// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a), a > 0, x >= 0.
    double gamma_q(double a, double x);

    /// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
    double gamma_p(double a, double x);

    struct QuadratureOptions
    {
        double rel_tol = 1e-10;
        std::size_t max_evaluations = std::size_t{1} << 20;
    };

    /// Adaptive Gauss-Kronrod (7/15) integration of f over [0, inf).
    ///
    /// The half line is mapped to [0, 1) by x = t / (1 - t) and initially split at
    /// x = 2^k, k = -50..12, so features at any scale in that range are resolved
    /// before global bisection of the worst interval begins.
    /// Throws NumericalError carrying the best estimate on budget exhaustion.
    double integrate_semi_infinite(const std::function<double(double)>& f,
                                   const QuadratureOptions& options = {});

    /// Same algorithm on a finite interval [lo, hi].
    double integrate_interval(const std::function<double(double)>& f, double lo, double hi,
                              const QuadratureOptions& options = {});
} // namespace misodelay

#endif // MISODELAY_SPECIAL_FUNCTIONS_HPP
