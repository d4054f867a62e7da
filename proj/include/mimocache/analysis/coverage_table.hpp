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
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

#include "mimocache/errors.hpp"
#include "mimocache/types.hpp"

namespace mimocache::analysis {

enum class Method { MonteCarlo, Exact, Upper, Lower, ClosedForm };

inline std::string_view to_string(Method m)
{
    switch (m) {
    case Method::MonteCarlo:
        return "mc";
    case Method::Exact:
        return "exact";
    case Method::Upper:
        return "upper";
    case Method::Lower:
        return "lower";
    case Method::ClosedForm:
        return "closed_form";
    }
    return "?";
}

/// Roundoff allowance when a computed probability strays outside [0, 1].
inline constexpr double kClampSlack = 1e-9;

/// Clamps excursions up to kClampSlack; anything larger is a bug upstream.
inline double clamp_probability(double value, std::string_view what)
{
    if (!std::isfinite(value)) {
        throw NumericalError(fmt::format("{}: non-finite probability", what));
    }
    if (value < -kClampSlack || value > 1.0 + kClampSlack) {
        throw NumericalError(fmt::format("{}: probability {:.3e} outside [0,1]", what, value));
    }
    return std::min(1.0, std::max(0.0, value));
}

/// Coverage P^k for serving ranks k = 1..K under one scheme and method.
struct CoverageTable {
    Scheme scheme = Scheme::MatchedFilter;
    Method method = Method::Upper;
    int cluster_size = 2;
    std::vector<double> values;  // values[k-1]

    double at(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
    double sum() const
    {
        double s = 0.0;
        for (double v : values) {
            s += v;
        }
        return s;
    }
};

/// Named invariant violations of a table; empty when it is valid.
inline std::vector<std::string> table_violations(const CoverageTable& table, double tolerance = 0.0)
{
    std::vector<std::string> out;
    if (table.cluster_size < 1 || table.values.size() != static_cast<std::size_t>(table.cluster_size)) {
        out.push_back(fmt::format("table.size: expected {} entries, got {}", table.cluster_size, table.values.size()));
        return out;
    }
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        const double v = table.values[i];
        if (!(v >= 0.0 && v <= 1.0)) {
            out.push_back(fmt::format("table.range: P^{} = {} outside [0,1]", i + 1, v));
        }
        if (i > 0 && v > table.values[i - 1] + tolerance) {
            out.push_back(fmt::format("table.monotone_in_k: P^{} = {:.9f} exceeds P^{} = {:.9f}", i + 1, v, i,
                                      table.values[i - 1]));
        }
    }
    return out;
}

inline void check_table(const CoverageTable& table)
{
    const auto violations = table_violations(table);
    if (!violations.empty()) {
        throw DomainError("invalid coverage table: " + violations.front());
    }
}

} // namespace mimocache::analysis
