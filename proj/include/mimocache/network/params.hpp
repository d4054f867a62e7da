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

#include <string>

#include "mimocache/errors.hpp"
#include "mimocache/types.hpp"

namespace mimocache::network {

/// Physical network parameters. Distances in meters, intensity in m^-2,
/// gamma in linear scale.
struct NetworkParams {
    double lambda_b = 5e-5;
    double alpha = 4.0;
    int antennas = 2;
    int cluster_size = 2;
    double gamma = 1.0;
    /// The simulation window is [-w, w]^2 around the typical user.
    double region_half_width = 2000.0;
    /// Deployments whose K-th nearest SBS lies beyond this radius are
    /// resampled, keeping the cluster clear of the window edge.
    double guard_radius = 1000.0;

    void validate() const
    {
        if (!(lambda_b > 0.0)) {
            throw DomainError("lambda_b must be positive");
        }
        if (!(alpha > 2.0)) {
            throw DomainError("path-loss exponent alpha must exceed 2");
        }
        if (antennas < 1) {
            throw DomainError("antennas must be >= 1");
        }
        if (cluster_size < 2) {
            throw DomainError("cluster size K must be >= 2");
        }
        if (!(gamma > 0.0)) {
            throw DomainError("SIR target gamma must be positive");
        }
        if (!(region_half_width >= 0.0) || !(guard_radius >= 0.0)) {
            throw DomainError("region dimensions must be nonnegative");
        }
        if (!(guard_radius < region_half_width)) {
            throw DomainError("guard radius must be smaller than the region half width");
        }
    }

    void validate(Scheme scheme) const
    {
        validate();
        if (scheme == Scheme::ZeroForcing && antennas < cluster_size) {
            throw DomainError("zero forcing needs antennas (" + std::to_string(antennas) + ") >= cluster size (" +
                              std::to_string(cluster_size) + ")");
        }
    }
};

} // namespace mimocache::network
