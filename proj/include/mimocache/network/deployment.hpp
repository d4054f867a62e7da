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
#include <stdexcept>
#include <vector>

#include "mimocache/network/params.hpp"
#include "mimocache/network/rng.hpp"
#include "mimocache/numerics/linalg.hpp"
#include "mimocache/types.hpp"

namespace mimocache::network {

using numerics::Complex;
using numerics::ComplexMatrix;
using numerics::ComplexVector;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// How interfering SBSs obtain their gain toward the typical user.
enum class InterferenceModel {
    /// Build every interferer's beamformer for its own (dummy) users and
    /// project the typical user's channel onto it.
    Explicit,
    /// Draw the resulting Exp(1) gain directly.
    Shortcut,
};

/// One realization of the network seen from the typical user at the origin.
/// Every per-SBS array is indexed by distance rank (0 = nearest).
struct Deployment {
    std::vector<Point> sbs_positions;
    std::vector<double> sorted_distances;
    std::vector<double> path_loss;  // r^-alpha
    /// Row i: h_{i0}. In Shortcut mode only the first K rows are drawn.
    ComplexMatrix channels;
    /// Row i: beamformer of SBS i for its own users (not the typical user).
    /// Empty in Shortcut mode.
    ComplexMatrix beamformers;
    /// |h_{i0}^H w_i|^2: gain of SBS i toward the typical user when it is
    /// not serving it.
    std::vector<double> effective_gains;

    std::size_t size() const noexcept { return sorted_distances.size(); }
};

/// SBS positions of a homogeneous PPP on the square window centered at the
/// typical user.
inline std::vector<Point> sample_ppp(const NetworkParams& params, RngStream& rng)
{
    const double width = 2.0 * params.region_half_width;
    const std::uint64_t count = rng.poisson(params.lambda_b * width * width);
    std::vector<Point> points(count);
    for (auto& p : points) {
        p.x = (rng.uniform() - 0.5) * width;
        p.y = (rng.uniform() - 0.5) * width;
    }
    return points;
}

inline void draw_channels_into(ComplexMatrix& out, RngStream& rng)
{
    for (std::size_t r = 0; r < out.rows(); ++r) {
        for (auto& z : out.row(r)) {
            z = rng.complex_normal();
        }
    }
}

/// i.i.d. Rayleigh channels h ~ CN(0, I_L), one per SBS.
inline std::vector<ComplexVector> draw_channels(int n_sbs, int antennas, RngStream& rng)
{
    if (n_sbs < 1 || antennas < 1) {
        throw DomainError("draw_channels: need at least one SBS and one antenna");
    }
    std::vector<ComplexVector> out(static_cast<std::size_t>(n_sbs), ComplexVector(static_cast<std::size_t>(antennas)));
    for (auto& h : out) {
        for (auto& z : h) {
            z = rng.complex_normal();
        }
    }
    return out;
}

struct RankedPoint {
    double x;
    double y;
    double r2;
};

/// Reusable scratch space for deployments and beamformers.
struct BeamformerWorkspace {
    ComplexVector own_user;
    ComplexMatrix co_cluster;
    std::vector<RankedPoint> points;
};

/// Beamformer of an SBS serving a user with channel drawn from `rng`. For ZF
/// the SBS also nulls K-1 further users of its cluster; dependent draws are
/// redrawn.
inline void dummy_beamformer(Scheme scheme, int antennas, int cluster_size, RngStream& rng, BeamformerWorkspace& ws,
                             std::span<Complex> out)
{
    const auto L = static_cast<std::size_t>(antennas);
    ws.own_user.resize(L);
    if (scheme == Scheme::MatchedFilter) {
        for (auto& z : ws.own_user) {
            z = rng.complex_normal();
        }
        const double n = numerics::norm(ws.own_user);
        for (std::size_t i = 0; i < L; ++i) {
            out[i] = ws.own_user[i] / n;
        }
        return;
    }
    ws.co_cluster.resize(L, static_cast<std::size_t>(cluster_size - 1));
    for (int attempt = 0;; ++attempt) {
        for (auto& z : ws.own_user) {
            z = rng.complex_normal();
        }
        draw_channels_into(ws.co_cluster, rng);
        try {
            numerics::zf_project_into(ws.own_user, ws.co_cluster, out);
            return;
        } catch (const RankDeficientError&) {
            if (attempt > 64) {
                throw;
            }
        }
    }
}

inline constexpr int kMaxDeploymentAttempts = 10000;

/// Samples positions, channels and interferer beamformers into `dep`,
/// reusing its storage. Realizations with fewer than K SBSs inside the guard
/// radius are redrawn.
inline void sample_deployment_into(Deployment& dep, const NetworkParams& params, Scheme scheme, RngStream& rng,
                                   InterferenceModel model, BeamformerWorkspace& ws)
{
    const auto K = static_cast<std::size_t>(params.cluster_size);
    const auto L = static_cast<std::size_t>(params.antennas);
    const double width = 2.0 * params.region_half_width;
    const double guard2 = params.guard_radius * params.guard_radius;
    auto& points = ws.points;
    for (int attempt = 0;; ++attempt) {
        if (attempt >= kMaxDeploymentAttempts) {
            throw std::runtime_error("sample_deployment: could not place K SBSs inside the guard radius");
        }
        points.resize(rng.poisson(params.lambda_b * width * width));
        if (points.size() < K) {
            continue;
        }
        for (auto& p : points) {
            p.x = (rng.uniform() - 0.5) * width;
            p.y = (rng.uniform() - 0.5) * width;
            p.r2 = p.x * p.x + p.y * p.y;
        }
        auto closer = [](const RankedPoint& a, const RankedPoint& b) { return a.r2 < b.r2; };
        std::nth_element(points.begin(), points.begin() + static_cast<std::ptrdiff_t>(K - 1), points.end(), closer);
        if (points[K - 1].r2 > guard2) {
            continue;
        }
        std::sort(points.begin(), points.end(), closer);
        break;
    }
    dep.sbs_positions.resize(points.size());
    dep.sorted_distances.resize(points.size());
    dep.path_loss.resize(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        dep.sbs_positions[i] = {points[i].x, points[i].y};
        dep.sorted_distances[i] = std::sqrt(points[i].r2);
        dep.path_loss[i] = params.alpha == 4.0 ? 1.0 / (points[i].r2 * points[i].r2)
                                               : std::pow(points[i].r2, -0.5 * params.alpha);
    }

    const std::size_t n = dep.size();
    dep.effective_gains.resize(n);
    if (model == InterferenceModel::Shortcut) {
        dep.channels.resize(K, L);
        draw_channels_into(dep.channels, rng);
        dep.beamformers.resize(0, L);
        for (auto& g : dep.effective_gains) {
            g = rng.exponential();
        }
        return;
    }
    dep.channels.resize(n, L);
    dep.beamformers.resize(n, L);
    for (std::size_t i = 0; i < n; ++i) {
        auto h = dep.channels.row(i);
        for (auto& z : h) {
            z = rng.complex_normal();
        }
        auto w = dep.beamformers.row(i);
        dummy_beamformer(scheme, params.antennas, params.cluster_size, rng, ws, w);
        dep.effective_gains[i] = std::norm(numerics::inner(h, w));
    }
}

inline Deployment sample_deployment(const NetworkParams& params, Scheme scheme, RngStream& rng,
                                    InterferenceModel model = InterferenceModel::Explicit)
{
    params.validate(scheme);
    Deployment dep;
    BeamformerWorkspace ws;
    sample_deployment_into(dep, params, scheme, rng, model, ws);
    return dep;
}

} // namespace mimocache::network
