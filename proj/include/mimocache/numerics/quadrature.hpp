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

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "mimocache/errors.hpp"

namespace mimocache::numerics {

struct QuadratureSpec {
    double relative_tolerance = 1e-8;
    double absolute_tolerance = 1e-12;
    int max_subdivisions = 500;

    void validate() const
    {
        if (!(relative_tolerance > 0.0) || !(absolute_tolerance > 0.0)) {
            throw DomainError("quadrature tolerances must be positive");
        }
        if (max_subdivisions < 1) {
            throw DomainError("quadrature needs at least one subdivision");
        }
    }
};

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;
    int subdivisions = 0;
    bool converged = true;
};

namespace detail {

struct Panel {
    double a;
    double b;
    double value;
    double error;
};

// 15-point Kronrod rule with the embedded 7-point Gauss rule for the error
// estimate. Node tables come from Boost.Math.
template <class F>
Panel kronrod_panel(F& f, double a, double b)
{
    using kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
    using gauss = boost::math::quadrature::gauss<double, 7>;
    const auto& xk = kronrod::abscissa();
    const auto& wk = kronrod::weights();
    const auto& wg = gauss::weights();

    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double k_sum = wk[0] * fc;
    double g_sum = wg[0] * fc;
    for (std::size_t i = 1; i < xk.size(); ++i) {
        const double dx = half * xk[i];
        const double pair = f(center - dx) + f(center + dx);
        k_sum += wk[i] * pair;
        if (i % 2 == 0) {
            g_sum += wg[i / 2] * pair;
        }
    }
    return {a, b, k_sum * half, std::abs((k_sum - g_sum) * half)};
}

} // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]. The panel
/// with the largest error estimate is bisected until the summed error meets
/// max(absolute_tolerance, relative_tolerance * |value|) or the subdivision
/// budget runs out (converged = false in that case).
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureSpec& spec = {})
{
    spec.validate();
    if (a == b) {
        return {};
    }
    if (a > b) {
        QuadratureResult r = integrate(f, b, a, spec);
        r.value = -r.value;
        return r;
    }

    auto worse = [](const detail::Panel& x, const detail::Panel& y) { return x.error < y.error; };
    std::vector<detail::Panel> heap;
    heap.reserve(static_cast<std::size_t>(spec.max_subdivisions) + 1);
    heap.push_back(detail::kronrod_panel(f, a, b));
    double value = heap.front().value;
    double error = heap.front().error;

    int subdivisions = 1;
    auto done = [&] { return error <= std::max(spec.absolute_tolerance, spec.relative_tolerance * std::abs(value)); };
    while (!done() && subdivisions < spec.max_subdivisions) {
        std::pop_heap(heap.begin(), heap.end(), worse);
        const detail::Panel worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // Interval exhausted at machine precision.
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), worse);
            break;
        }
        const detail::Panel left = detail::kronrod_panel(f, worst.a, mid);
        const detail::Panel right = detail::kronrod_panel(f, mid, worst.b);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);
        ++subdivisions;

        // Re-sum instead of updating incrementally so roundoff does not drift.
        value = 0.0;
        error = 0.0;
        for (const auto& p : heap) {
            value += p.value;
            error += p.error;
        }
    }
    return {value, error, subdivisions, done()};
}

/// Integral of f over [a, inf) using u = a + scale ((1 - t)^-q - 1), t in
/// [0, 1). `decay` is the exponent beta of an algebraic tail f ~ u^-beta; q
/// is chosen so that the mapped integrand stays bounded at t = 1.
template <class F>
QuadratureResult integrate_to_infinity(F&& f, double a, const QuadratureSpec& spec = {}, double scale = 1.0,
                                       double decay = 2.0)
{
    if (!(scale > 0.0)) {
        throw DomainError("integrate_to_infinity: scale must be positive");
    }
    if (!(decay > 1.0)) {
        throw DomainError("integrate_to_infinity: tail must decay faster than 1/u");
    }
    const double q = std::max(1.0, 1.0 / (decay - 1.0));
    auto mapped = [&](double t) {
        const double one_minus = 1.0 - t;
        if (one_minus <= 0.0) {
            return 0.0;
        }
        const double stretch = q == 1.0 ? 1.0 / one_minus : std::pow(one_minus, -q);
        const double u = a + scale * (stretch - 1.0);
        if (!std::isfinite(u)) {
            return 0.0;
        }
        return f(u) * scale * q * stretch / one_minus;
    };
    return integrate(mapped, 0.0, 1.0, spec);
}

} // namespace mimocache::numerics
