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
#include "misodelay/random.hpp"
#include "misodelay/special_functions.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

using namespace misodelay;

namespace
{
    // Frozen from a 30-digit evaluation.
    constexpr double kGamma0At1 = 0.21938393439552027;       // E1(1)
    constexpr double kGammaMinusHalfAt1 = 0.17814771178156069;

    double rel_err(double got, double want) { return std::abs(got - want) / std::abs(want); }

    // Gamma(a, x) = x^{a-1} e^{-x} int_0^inf (1 + u/x)^{a-1} e^{-u} du, in logs.
    double log_upper_gamma_by_quadrature(double a, double x)
    {
        QuadratureOptions opt;
        opt.rel_tol = 1e-12;
        const double v = integrate_semi_infinite(
            [&](double u) { return std::exp((a - 1.0) * std::log1p(u / x) - u); }, opt);
        return (a - 1.0) * std::log(x) - x + std::log(v);
    }
} // namespace

TEST_CASE("ln_gamma at known points")
{
    CHECK(std::abs(ln_gamma(1.0)) < 1e-14);
    CHECK(std::abs(ln_gamma(2.0)) < 1e-14);
    CHECK(ln_gamma(0.5) == doctest::Approx(0.5 * std::log(std::numbers::pi)).epsilon(1e-14));
    CHECK(ln_gamma(10.0) == doctest::Approx(std::log(362880.0)).epsilon(1e-14));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("ln_gamma tracks std::lgamma")
{
    for (double a = 1e-3; a < 300.0; a *= 1.07)
        CHECK(std::abs(ln_gamma(a) - std::lgamma(a)) <= 1e-12 * std::max(1.0, std::abs(std::lgamma(a))));
}

TEST_CASE("upper incomplete gamma examples")
{
    CHECK(upper_incomplete_gamma(1.0, 2.0).log_magnitude == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(upper_incomplete_gamma(0.0, 1.0).value() == doctest::Approx(kGamma0At1).epsilon(1e-12));

    // Gamma(-1/2, 1) from Gamma(1/2, 1) = sqrt(pi) erfc(1) and one downward step.
    const double half = std::sqrt(std::numbers::pi) * std::erfc(1.0);
    const double minus_half = (half - std::exp(-1.0)) / -0.5;
    CHECK(minus_half == doctest::Approx(kGammaMinusHalfAt1).epsilon(1e-14));
    CHECK(upper_incomplete_gamma(-0.5, 1.0).value() == doctest::Approx(kGammaMinusHalfAt1).epsilon(1e-12));

    CHECK(upper_incomplete_gamma(0.0, 1.0).log_magnitude ==
          doctest::Approx(log_upper_gamma_by_quadrature(0.0, 1.0)).epsilon(1e-12));

    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(upper_incomplete_gamma(1.0, -1.0), std::domain_error);
}

TEST_CASE("upper incomplete gamma agrees with quadrature on random orders")
{
    auto rng = make_stream(7, StreamPurpose::kValidation, 0);
    std::uniform_real_distribution<double> order(-50.0, 50.0);
    std::uniform_real_distribution<double> log_x(std::log(1e-3), std::log(1e3));
    double worst = 0.0;
    for (int i = 0; i < 200; ++i)
    {
        const double a = order(rng);
        const double x = std::exp(log_x(rng));
        const double got = upper_incomplete_gamma(a, x).log_magnitude;
        const double want = log_upper_gamma_by_quadrature(a, x);
        // relative error of Gamma itself
        const double err = std::abs(std::expm1(got - want));
        worst = std::max(worst, err);
        INFO("a=" << a << " x=" << x);
        CHECK(err <= 1e-8);
    }
    MESSAGE("worst relative error " << worst);
}

TEST_CASE("upper incomplete gamma satisfies the recurrence")
{
    // Gamma(a + 1, x) = a Gamma(a, x) + x^a e^{-x}
    auto rng = make_stream(11, StreamPurpose::kValidation, 1);
    std::uniform_real_distribution<double> order(-20.0, 20.0);
    std::uniform_real_distribution<double> log_x(std::log(0.1), std::log(100.0));
    for (int i = 0; i < 500; ++i)
    {
        const double a = order(rng);
        if (std::abs(a) < 1e-3)
            continue;
        const double x = std::exp(log_x(rng));
        const double lhs = upper_incomplete_gamma(a + 1.0, x).log_magnitude;
        const std::array<SignedLog, 2> terms{
            SignedLog{std::log(std::abs(a)) + upper_incomplete_gamma(a, x).log_magnitude, a > 0 ? 1 : -1},
            SignedLog{a * std::log(x) - x, 1}};
        const SignedLogSum rhs = signed_log_sum(terms);
        INFO("a=" << a << " x=" << x);
        REQUIRE(rhs.value.sign == 1);
        // the check is only as sharp as the cancellation in the right-hand side allows
        const double tol = 1e-10 / rhs.cancellation_ratio();
        CHECK(std::abs(std::expm1(lhs - rhs.value.log_abs)) <= std::max(tol, 1e-10));
    }
}

TEST_CASE("upper incomplete gamma is nonincreasing in x")
{
    for (double a : {-7.3, -1.0, -0.2, 0.0, 0.4, 1.0, 3.5, 20.0})
    {
        double prev = upper_incomplete_gamma(a, 1e-3).log_magnitude;
        for (double x = 2e-3; x < 500.0; x *= 1.3)
        {
            const double cur = upper_incomplete_gamma(a, x).log_magnitude;
            CHECK(cur <= prev);
            prev = cur;
        }
    }
}

TEST_CASE("regularized gamma")
{
    CHECK(gamma_q(1.0, 2.0) == doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(gamma_p(1.0, 2.0) == doctest::Approx(1.0 - std::exp(-2.0)).epsilon(1e-14));
    CHECK(gamma_q(0.5, 1.0) == doctest::Approx(std::erfc(1.0)).epsilon(1e-13));
    CHECK(gamma_q(3.0, 0.0) == 1.0);
    for (double a : {0.5, 2.0, 7.0, 40.0})
        for (double x : {0.1, 1.0, 5.0, 50.0})
            CHECK(gamma_p(a, x) + gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("log-domain helpers")
{
    const std::array<double, 3> xs{std::log(1.0), std::log(2.0), std::log(3.0)};
    CHECK(log_sum_exp(xs) == doctest::Approx(std::log(6.0)).epsilon(1e-15));
    CHECK(std::isinf(log_sum_exp(std::span<const double>{})));
    CHECK(log_add_exp(1000.0, 1000.0) == doctest::Approx(1000.0 + std::log(2.0)).epsilon(1e-15));
    CHECK(log1m_exp(std::log(0.25)) == doctest::Approx(std::log(0.75)).epsilon(1e-15));
    CHECK(log1m_exp(-1e-20) == doctest::Approx(std::log(1e-20)).epsilon(1e-12));

    const std::array<SignedLog, 3> terms{SignedLog{std::log(5.0), 1}, SignedLog{std::log(3.0), -1},
                                         SignedLog{std::log(1.0), -1}};
    const SignedLogSum s = signed_log_sum(terms);
    CHECK(s.value.sign == 1);
    CHECK(s.value.log_abs == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(s.cancellation_ratio() == doctest::Approx(0.2).epsilon(1e-14));

    CHECK(LogValue::from_linear(3.5).value() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(LogValue::zero().is_zero());
    CHECK((LogValue::from_linear(2.0) * LogValue::from_linear(4.0)).value() == doctest::Approx(8.0));
}

TEST_CASE("semi-infinite quadrature examples")
{
    const double tol = 1e-10;
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x); }) == doctest::Approx(1.0).epsilon(tol));
    CHECK(integrate_semi_infinite([](double x) { return x * std::exp(-x); }) == doctest::Approx(1.0).epsilon(tol));
    CHECK(integrate_semi_infinite([](double x) { return std::exp(-x * x); }) ==
          doctest::Approx(std::sqrt(std::numbers::pi) / 2.0).epsilon(tol));
    CHECK(integrate_interval([](double x) { return std::sin(x); }, 0.0, std::numbers::pi) ==
          doctest::Approx(2.0).epsilon(tol));
}

TEST_CASE("quadrature budget exhaustion carries the best estimate")
{
    QuadratureOptions opt;
    opt.max_evaluations = 1000;
    opt.rel_tol = 1e-14;
    const auto f = [](double x) { return std::exp(-x) / std::sqrt(x); };
    bool thrown = false;
    try
    {
        (void)integrate_semi_infinite(f, opt);
    }
    catch (const NumericalError& e)
    {
        thrown = true;
        CHECK(e.best_estimate() == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-3));
        CHECK(e.error_bound() > 0.0);
    }
    CHECK(thrown);
}
