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

// Derivative recursions for Laplace transforms of the form
//     L(s) = A(s)^q * exp(X(s)).
//
// A derivative series holds f^(0..n)(s). Every recursion here is homogeneous
// in the derivative order, so the same code accepts s-scaled series
// (s^i f^(i)(s)) as well; the coverage integrals use the scaled form to keep
// magnitudes near unity when s = gamma * r^alpha is large.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "mimocache/errors.hpp"
#include "mimocache/numerics/special.hpp"

namespace mimocache::numerics {

inline constexpr int kMaxDerivativeOrder = 16;

using DerivativeSeries = std::vector<double>;

inline void check_order(std::size_t series_size)
{
    if (series_size == 0) {
        throw DomainError("derivative series must contain at least the value");
    }
    if (static_cast<int>(series_size) - 1 > kMaxDerivativeOrder) {
        throw OrderOverflowError("derivative order " + std::to_string(series_size - 1) + " exceeds cap " +
                                 std::to_string(kMaxDerivativeOrder));
    }
}

/// Derivatives of exp(X) from derivatives of X:
///     L^(i) = sum_{m<i} C(i-1, m) L^(m) X^(i-m).
inline DerivativeSeries exp_derivatives(std::span<const double> exponent)
{
    check_order(exponent.size());
    const std::size_t n = exponent.size();
    DerivativeSeries out(n, 0.0);
    out[0] = std::exp(exponent[0]);
    for (std::size_t i = 1; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t m = 0; m < i; ++m) {
            acc += binomial(static_cast<int>(i - 1), static_cast<int>(m)) * out[m] * exponent[i - m];
        }
        out[i] = acc;
    }
    return out;
}

/// Derivatives of A^q for A(s) > 0, from A * (A^q)' = q A' A^q differentiated
/// by Leibniz.
inline DerivativeSeries power_derivatives(std::span<const double> base, double exponent)
{
    check_order(base.size());
    const std::size_t n = base.size();
    DerivativeSeries out(n, 0.0);
    if (exponent == 0.0) {
        out[0] = 1.0;
        return out;
    }
    if (!(base[0] > 0.0)) {
        throw DomainError("power_derivatives: base value must be positive");
    }
    out[0] = std::pow(base[0], exponent);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= k; ++j) {
            acc += exponent * binomial(static_cast<int>(k), static_cast<int>(j)) * base[j + 1] * out[k - j];
        }
        for (std::size_t j = 1; j <= k; ++j) {
            acc -= binomial(static_cast<int>(k), static_cast<int>(j)) * base[j] * out[k + 1 - j];
        }
        out[k + 1] = acc / base[0];
    }
    return out;
}

/// General Leibniz rule.
inline DerivativeSeries product_derivatives(std::span<const double> f, std::span<const double> g)
{
    if (f.size() != g.size()) {
        throw DimensionError("product_derivatives: series lengths differ");
    }
    check_order(f.size());
    DerivativeSeries out(f.size(), 0.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) {
            acc += binomial(static_cast<int>(i), static_cast<int>(j)) * f[j] * g[i - j];
        }
        out[i] = acc;
    }
    return out;
}

/// Derivatives of L = exp(X) at s up to `order`. `exponent_derivatives(s, order)`
/// must return X^(0..order)(s).
template <class ExponentFn>
DerivativeSeries laplace_derivatives(ExponentFn&& exponent_derivatives, double s, int order)
{
    if (order < 0) {
        throw DomainError("laplace_derivatives: negative order");
    }
    if (order > kMaxDerivativeOrder) {
        throw OrderOverflowError("laplace_derivatives: order " + std::to_string(order) + " exceeds cap " +
                                 std::to_string(kMaxDerivativeOrder));
    }
    const std::vector<double> x = exponent_derivatives(s, order);
    if (x.size() != static_cast<std::size_t>(order) + 1) {
        throw DimensionError("laplace_derivatives: exponent series has wrong length");
    }
    return exp_derivatives(x);
}

/// (-1)^i L^(i) >= -tolerance * |L^(0)| for every i: the sign pattern of the
/// Laplace transform of a nonnegative random variable.
inline bool is_completely_monotone(std::span<const double> series, double tolerance = 1e-10)
{
    if (series.empty()) {
        return true;
    }
    const double scale = std::max(std::abs(series[0]), std::numeric_limits<double>::min());
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double signed_value = (i % 2 == 0 ? 1.0 : -1.0) * series[i];
        if (signed_value < -tolerance * scale) {
            return false;
        }
    }
    return true;
}

} // namespace mimocache::numerics
