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

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>

#include "mimocache/errors.hpp"
#include "mimocache/numerics/quadrature.hpp"

namespace mimocache::numerics {

/// Unnormalized lower incomplete Beta function, B(x, y, z) = int_0^z u^(x-1) (1-u)^(y-1) du.
inline double incomplete_beta(double x, double y, double z)
{
    if (!(x > 0.0) || !(y > 0.0)) {
        throw DomainError("incomplete_beta: shape parameters must be positive");
    }
    if (!(z >= 0.0 && z <= 1.0)) {
        throw DomainError("incomplete_beta: z must lie in [0, 1]");
    }
    return boost::math::beta(x, y, z);
}

/// Complementary form B'(x, y, z) = int_z^1 u^(x-1) (1-u)^(y-1) du.
inline double incomplete_beta_complement(double x, double y, double z)
{
    if (!(x > 0.0) || !(y > 0.0)) {
        throw DomainError("incomplete_beta_complement: shape parameters must be positive");
    }
    if (!(z >= 0.0 && z <= 1.0)) {
        throw DomainError("incomplete_beta_complement: z must lie in [0, 1]");
    }
    return boost::math::betac(x, y, z);
}

/// A(x) by quadrature for any alpha > 2, without the alpha = 4 shortcut.
inline double interference_tail_quadrature(double x, double alpha, const QuadratureSpec& spec = {})
{
    const double half_alpha = 0.5 * alpha;
    auto integrand = [half_alpha](double u) { return 1.0 / (1.0 + std::pow(u, half_alpha)); };
    return integrate_to_infinity(integrand, x, spec, std::max(1.0, x), half_alpha).value;
}

/// A(x) = int_x^inf du / (1 + u^(alpha/2)), the normalized tail of the
/// out-of-cluster interference. Closed form arctan(1/x) for alpha = 4.
inline double interference_tail_integral(double x, double alpha, const QuadratureSpec& spec = {})
{
    if (!(alpha > 2.0)) {
        throw DomainError("interference_tail_integral: alpha must exceed 2 for convergence");
    }
    if (!(x >= 0.0)) {
        throw DomainError("interference_tail_integral: x must be nonnegative");
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    if (alpha == 4.0) {
        return std::atan2(1.0, x);
    }
    return interference_tail_quadrature(x, alpha, spec);
}

/// CCDF of Gamma(m, 1) at x, via the finite series sum_{i<m} x^i e^-x / i!.
inline double gamma_ccdf(double x, int m)
{
    if (m < 1) {
        throw DomainError("gamma_ccdf: shape must be a positive integer");
    }
    if (!(x >= 0.0)) {
        throw DomainError("gamma_ccdf: x must be nonnegative");
    }
    double term = std::exp(-x);
    double sum = term;
    for (int i = 1; i < m; ++i) {
        term *= x / i;
        sum += term;
    }
    return std::min(sum, 1.0);
}

/// Gamma(m, 1) effective channel gain with its Alzer constant (m!)^(-1/m).
struct GainLaw {
    int shape = 1;
    double alzer_constant = 1.0;

    static GainLaw with_shape(int m)
    {
        if (m < 1) {
            throw DomainError("GainLaw: shape must be >= 1, got " + std::to_string(m));
        }
        return {m, m == 1 ? 1.0 : std::exp(-std::lgamma(m + 1.0) / m)};
    }

    static GainLaw matched_filter(int antennas) { return with_shape(antennas); }

    static GainLaw zero_forcing(int antennas, int cluster_size)
    {
        if (antennas < cluster_size) {
            throw DomainError("GainLaw: zero forcing needs antennas >= cluster size");
        }
        return with_shape(antennas - cluster_size + 1);
    }
};

struct AlzerBracket {
    double lower;
    double upper;
};

/// Two-sided bracket (1 - e^{-a z})^m <= F(z) <= (1 - e^{-z})^m of the
/// Gamma(m, 1) CDF.
inline AlzerBracket alzer_bounds(double z, int m)
{
    if (!(z >= 0.0)) {
        throw DomainError("alzer_bounds: z must be nonnegative");
    }
    const GainLaw law = GainLaw::with_shape(m);
    return {std::pow(-std::expm1(-law.alzer_constant * z), m), std::pow(-std::expm1(-z), m)};
}

inline double binomial(int n, int k)
{
    if (k < 0 || k > n) {
        return 0.0;
    }
    return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

inline double factorial(int n) { return std::round(std::tgamma(n + 1.0)); }

} // namespace mimocache::numerics
