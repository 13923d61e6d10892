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

#include "misodelay/channel_model.hpp"

#include "misodelay/special_functions.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

namespace misodelay
{
    std::string_view to_string(Scheme scheme)
    {
        return scheme == Scheme::kZfbf ? "zfbf" : "zfdpc";
    }

    Scheme parse_scheme(std::string_view text)
    {
        if (text == "zfbf")
            return Scheme::kZfbf;
        if (text == "zfdpc")
            return Scheme::kZfDpc;
        throw std::invalid_argument("unknown scheme '" + std::string(text) + "' (expected zfbf or zfdpc)");
    }

    double gain_pdf(double xi, int m)
    {
        if (xi < 0.0 || m < 1)
            throw std::domain_error("gain_pdf requires xi >= 0 and m >= 1");
        if (xi == 0.0)
            return m == 1 ? 1.0 : 0.0;
        return std::exp((m - 1) * std::log(xi) - xi - ln_gamma(m));
    }

    double gain_cdf(double xi, int m)
    {
        if (m < 1)
            throw std::domain_error("gain_cdf requires m >= 1");
        if (xi <= 0.0)
            return 0.0;
        return gamma_p(m, xi);
    }

    double sample_gain(int m, RandomStream& rng)
    {
        if (m < 1)
            throw std::domain_error("sample_gain requires m >= 1");
        std::gamma_distribution<double> dist(static_cast<double>(m), 1.0);
        return dist(rng);
    }

    OracleDraw zfbf_gain_oracle(int nt, int k, RandomStream& rng)
    {
        if (k < 1 || k > nt)
            throw std::domain_error("zfbf_gain_oracle requires 1 <= k <= nt");

        // real and imaginary parts with variance 1/2 give E|h|^2 = 1
        std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
        OracleDraw out;
        Eigen::MatrixXcd h(k, nt);
        for (;;)
        {
            for (int r = 0; r < k; ++r)
                for (int c = 0; c < nt; ++c)
                {
                    const double re = normal(rng);
                    const double im = normal(rng);
                    h(r, c) = {re, im};
                }

            const Eigen::MatrixXcd gram = h * h.adjoint();
            const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
            const double lmin = eig.eigenvalues().minCoeff();
            const double lmax = eig.eigenvalues().maxCoeff();
            if (!(lmin > 0.0) || lmax / lmin > 1e12)
            {
                ++out.singular_resamples;
                continue;
            }

            const Eigen::MatrixXcd pinv = h.adjoint() * gram.inverse();
            out.xi.resize(static_cast<std::size_t>(k));
            for (int j = 0; j < k; ++j)
                out.xi[static_cast<std::size_t>(j)] = 1.0 / pinv.col(j).squaredNorm();
            return out;
        }
    }

    DofAssignment dof_assignment(Scheme scheme, int nt, int k)
    {
        if (k < 1 || k > nt)
            throw std::domain_error("dof_assignment requires 1 <= k <= nt (k=" + std::to_string(k) +
                                    ", nt=" + std::to_string(nt) + ")");
        DofAssignment out;
        if (scheme == Scheme::kZfbf)
        {
            out.entries.push_back({nt - k + 1, 1.0});
            return out;
        }
        out.entries.reserve(static_cast<std::size_t>(k));
        for (int kappa = k; kappa >= 1; --kappa)
            out.entries.push_back({nt - kappa + 1, 1.0 / k});
        return out;
    }

    double service_bits(double rho, double xi, int nd)
    {
        return nd * std::log2(1.0 + rho * xi);
    }
} // namespace misodelay
