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
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "mimocache/errors.hpp"

namespace mimocache {

enum class Scheme { MatchedFilter, ZeroForcing };

inline std::string_view to_string(Scheme s) { return s == Scheme::MatchedFilter ? "mf" : "zf"; }

inline Scheme parse_scheme(std::string_view text)
{
    if (text == "mf" || text == "MF") {
        return Scheme::MatchedFilter;
    }
    if (text == "zf" || text == "ZF") {
        return Scheme::ZeroForcing;
    }
    throw DomainError("unknown beamforming scheme '" + std::string(text) + "' (expected mf or zf)");
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

/// Per-file caching probabilities b_n, shared by every SBS.
struct CachePolicy {
    std::vector<double> b;

    std::size_t size() const noexcept { return b.size(); }
    double total() const { return std::accumulate(b.begin(), b.end(), 0.0); }

    /// Box constraints and sum(b) <= budget (+ slack).
    void check_feasible(double budget, double slack = 1e-9) const
    {
        for (std::size_t n = 0; n < b.size(); ++n) {
            if (!(b[n] >= 0.0 && b[n] <= 1.0)) {
                throw ConstraintViolation("cache probability b[" + std::to_string(n) + "] outside [0,1]");
            }
        }
        if (total() > budget + slack) {
            throw ConstraintViolation("cache probabilities sum to " + std::to_string(total()) +
                                      ", exceeding cache size " + std::to_string(budget));
        }
    }
};

/// File library: request probabilities p_n and the per-SBS cache size M.
struct ContentParams {
    std::vector<double> popularity;
    int cache_size = 10;

    int library_size() const noexcept { return static_cast<int>(popularity.size()); }

    void validate() const
    {
        if (popularity.empty()) {
            throw DomainError("content library must contain at least one file");
        }
        if (cache_size < 0) {
            throw DomainError("cache size must be nonnegative");
        }
        double sum = 0.0;
        for (double p : popularity) {
            if (!(p >= 0.0)) {
                throw DomainError("popularity entries must be nonnegative");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw DomainError("popularity must sum to 1");
        }
    }
};

} // namespace mimocache
