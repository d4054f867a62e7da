/*
   Copyright 2026 The mimocache Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

// Exact coverage by averaging the Gamma-gain CCDF series over the distance
// laws. Every interference Laplace transform L(s) is handled through its
// scaled derivatives s^i L^(i)(s): written in the normalized radius
// rho = r / r_ref they no longer depend on r_ref, so the inner integrals are
// computed once per SIR target and the outer integrals only rescale them.

#include <cmath>
#include <numbers>
#include <vector>

#include "mimocache/analysis/bounds.hpp"
#include "mimocache/analysis/distance.hpp"
#include "mimocache/numerics/laplace.hpp"
#include "mimocache/numerics/quadrature.hpp"

namespace mimocache::analysis {

/// Tighter than the library default: the exact values are compared against
/// bounds that can coincide with them.
inline numerics::QuadratureSpec exact_quadrature_spec()
{
    numerics::QuadratureSpec spec;
    spec.relative_tolerance = 1e-11;
    spec.absolute_tolerance = 1e-14;
    spec.max_subdivisions = 2000;
    return spec;
}

namespace detail {

inline void check_derivative_order(int order)
{
    if (order > numerics::kMaxDerivativeOrder) {
        throw OrderOverflowError("exact coverage needs derivative order " + std::to_string(order) +
                                 ", above the supported maximum " + std::to_string(numerics::kMaxDerivativeOrder));
    }
}

// i! (1/(1+v))^i v/(1+v) with v = 1/q: the magnitude of the i-th scaled
// derivative of 1/(1+sc) at q = sc.
inline double scaled_kernel(int i, double v)
{
    const double p = 1.0 / (1.0 + v);
    return numerics::factorial(i) * std::pow(p, i) * v * p;
}

/// Scaled derivatives of the near-field factor, the mean of 1/(1 + s r^-alpha)
/// over a point uniform in the disc of radius r_k, at s = gamma r_k^alpha.
inline std::vector<double> near_field_series(double gamma, double alpha, int order,
                                             const numerics::QuadratureSpec& spec)
{
    std::vector<double> out(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        auto f = [&](double rho) { return scaled_kernel(i, std::pow(rho, alpha) / gamma) * 2.0 * rho; };
        out[static_cast<std::size_t>(i)] = sign * numerics::integrate(f, 0.0, 1.0, spec).value;
    }
    return out;
}

/// y_i = int_1^inf s^i d^i/ds^i [q / (1+q)] rho d rho with q = a rho^-alpha.
inline std::vector<double> far_field_series(double a, double alpha, int order, const numerics::QuadratureSpec& spec)
{
    std::vector<double> out(static_cast<std::size_t>(order) + 1);
    for (int i = 0; i <= order; ++i) {
        auto f = [&](double rho) {
            const double v = std::pow(rho, alpha) / a;
            if (i == 0) {
                return rho / (1.0 + v);
            }
            const double sign = (i % 2 == 0) ? -1.0 : 1.0;
            return sign * scaled_kernel(i, v) * rho;
        };
        out[static_cast<std::size_t>(i)] = numerics::integrate_to_infinity(f, 1.0, spec, 1.0, alpha - 1.0).value;
    }
    return out;
}

// Gamma(n+1, 1) CCDF series: sum_i (-1)^i Ltilde_i / i!.
inline double ccdf_series(const numerics::DerivativeSeries& scaled, const char* what)
{
    if (!numerics::is_completely_monotone(scaled, 1e-8)) {
        throw NumericalError(std::string(what) + ": Laplace derivatives lost their alternating sign");
    }
    double total = 0.0;
    for (std::size_t i = 0; i < scaled.size(); ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        total += sign * scaled[i] / numerics::factorial(static_cast<int>(i));
    }
    return total;
}

inline numerics::DerivativeSeries exponent_series(std::span<const double> y, double rr_scale)
{
    numerics::DerivativeSeries x(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        x[i] = -rr_scale * y[i];
    }
    return x;
}

} // namespace detail

/// Scaled derivatives s^i L^(i)(s), i = 0..order, of the MF interference
/// transform seen by a user served at distance r_k by its k-th nearest SBS,
/// evaluated at s = gamma r_k^alpha.
inline numerics::DerivativeSeries mf_interference_series(double gamma, double r_k, int k, double alpha,
                                                         double lambda_b, int order,
                                                         const numerics::QuadratureSpec& spec = exact_quadrature_spec())
{
    detail::check_derivative_order(order);
    const auto near = detail::near_field_series(gamma, alpha, order, spec);
    const auto y = detail::far_field_series(gamma, alpha, order, spec);
    const auto far = numerics::exp_derivatives(detail::exponent_series(y, 2.0 * std::numbers::pi * lambda_b * r_k * r_k));
    return numerics::product_derivatives(numerics::power_derivatives(near, k - 1.0), far);
}

/// Scaled derivatives s^i L^(i)(s) of the ZF interference transform, where
/// only SBSs beyond r_K interfere, at s = gamma r_k^alpha.
inline numerics::DerivativeSeries zf_interference_series(double gamma, double r_k, double r_K, double alpha,
                                                         double lambda_b, int order,
                                                         const numerics::QuadratureSpec& spec = exact_quadrature_spec())
{
    detail::check_derivative_order(order);
    const double a = gamma * std::pow(r_k / r_K, alpha);
    const auto y = detail::far_field_series(a, alpha, order, spec);
    return numerics::exp_derivatives(detail::exponent_series(y, 2.0 * std::numbers::pi * lambda_b * r_K * r_K));
}

/// L(s) = exp(-2 pi lambda int_{r_K}^inf s r^-alpha / (1 + s r^-alpha) r dr)
/// by direct quadrature in r, for checking the series above.
inline double zf_interference_laplace(double s, double r_K, double alpha, double lambda_b,
                                      const numerics::QuadratureSpec& spec = exact_quadrature_spec())
{
    auto f = [&](double r) {
        const double q = s * std::pow(r, -alpha);
        return q / (1.0 + q) * r;
    };
    const double integral = numerics::integrate_to_infinity(f, r_K, spec, r_K, alpha - 1.0).value;
    return std::exp(-2.0 * std::numbers::pi * lambda_b * integral);
}

/// MF coverage of the k-th nearest SBS, exact up to quadrature error.
inline double coverage_mf_exact(int k, int K, int L, double gamma, double alpha, double lambda_b,
                                const numerics::QuadratureSpec& spec = exact_quadrature_spec())
{
    detail::check_coverage_args(k, K, L, gamma, alpha);
    const int order = L - 1;
    detail::check_derivative_order(order);
    const auto near = numerics::power_derivatives(detail::near_field_series(gamma, alpha, order, spec), k - 1.0);
    const auto y = detail::far_field_series(gamma, alpha, order, spec);
    const double c = 2.0 * std::numbers::pi * lambda_b;

    auto integrand = [&](double r) {
        if (r == 0.0) {
            return 0.0;
        }
        const auto far = numerics::exp_derivatives(detail::exponent_series(y, c * r * r));
        return kth_nearest_pdf(r, k, lambda_b) *
               detail::ccdf_series(numerics::product_derivatives(near, far), "coverage_mf_exact");
    };
    const double r_max = kth_nearest_tail_radius(k, lambda_b);
    return clamp_probability(numerics::integrate(integrand, 0.0, r_max, spec).value, "coverage_mf_exact");
}

/// ZF coverage of the k-th nearest SBS (K-1 co-cluster users nulled), exact
/// up to quadrature error. Averages over the joint law of (r_k, r_K).
inline double coverage_zf_exact(int k, int K, int L, double gamma, double alpha, double lambda_b,
                                const numerics::QuadratureSpec& spec = exact_quadrature_spec())
{
    detail::check_coverage_args(k, K, L, gamma, alpha);
    if (L < K) {
        throw DomainError("coverage_zf_exact: zero forcing needs L >= K");
    }
    const int order = L - K;
    detail::check_derivative_order(order);
    const double c = 2.0 * std::numbers::pi * lambda_b;
    const double r_max = kth_nearest_tail_radius(K, lambda_b);

    // Conditional coverage given (r_k, r_K).
    auto conditional = [&](double r_k, double r_K) {
        const double a = gamma * std::pow(r_k / r_K, alpha);
        const auto y = detail::far_field_series(a, alpha, order, spec);
        const auto series = numerics::exp_derivatives(detail::exponent_series(y, c * r_K * r_K));
        return detail::ccdf_series(series, "coverage_zf_exact");
    };

    double value = 0.0;
    if (k == K) {
        auto integrand = [&](double r) { return r == 0.0 ? 0.0 : kth_nearest_pdf(r, K, lambda_b) * conditional(r, r); };
        value = numerics::integrate(integrand, 0.0, r_max, spec).value;
    } else {
        numerics::QuadratureSpec inner_spec = spec;
        inner_spec.relative_tolerance = std::max(spec.relative_tolerance, 1e-10);
        auto outer = [&](double r_K) {
            if (r_K == 0.0) {
                return 0.0;
            }
            auto inner = [&](double r_k) {
                const double density = joint_pdf(r_k, r_K, k, K, lambda_b);
                return density == 0.0 ? 0.0 : density * conditional(r_k, r_K);
            };
            return numerics::integrate(inner, 0.0, r_K, inner_spec).value;
        };
        value = numerics::integrate(outer, 0.0, r_max, spec).value;
    }
    return clamp_probability(value, "coverage_zf_exact");
}

} // namespace mimocache::analysis
