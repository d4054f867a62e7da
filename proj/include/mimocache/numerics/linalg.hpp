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
#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <vector>

#include "mimocache/errors.hpp"

namespace mimocache::numerics {

using Complex = std::complex<double>;

/// Channels are column vectors c in C^L; a user receives c^H w from a
/// transmitter using beamformer w.
using ComplexVector = std::vector<Complex>;

/// Dense row-major complex matrix. Sized for the small L x K problems of a
/// coordination cluster.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    Complex& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<Complex> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const Complex> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    /// Reshape, keeping capacity. Contents are unspecified afterwards.
    void resize(std::size_t rows, std::size_t cols)
    {
        rows_ = rows;
        cols_ = cols;
        data_.resize(rows * cols);
    }

    bool all_finite() const
    {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

inline double squared_norm(std::span<const Complex> v)
{
    double s = 0.0;
    for (const Complex& z : v) {
        s += std::norm(z);
    }
    return s;
}

inline double norm(std::span<const Complex> v) { return std::sqrt(squared_norm(v)); }

/// a^H b
inline Complex inner(std::span<const Complex> a, std::span<const Complex> b)
{
    Complex s{};
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += std::conj(a[i]) * b[i];
    }
    return s;
}

/// ||H^H w|| for H with one user channel per column.
inline double nulling_residual(const ComplexMatrix& H, std::span<const Complex> w)
{
    double s = 0.0;
    for (std::size_t c = 0; c < H.cols(); ++c) {
        Complex dot{};
        for (std::size_t r = 0; r < H.rows(); ++r) {
            dot += std::conj(H(r, c)) * w[r];
        }
        s += std::norm(dot);
    }
    return std::sqrt(s);
}

/// Reciprocal condition estimate of H^H H below which zf_project gives up.
inline constexpr double kRankDeficiencyThreshold = 1e-12;

/// Writes (I - H H^+) h / ||(I - H H^+) h|| into `out`, i.e. the direction of
/// h with every column of H projected out. H is L x (K-1) and may have zero
/// columns. Throws RankDeficientError when the columns of H are numerically
/// dependent or h lies in their span.
inline void zf_project_into(std::span<const Complex> h, const ComplexMatrix& H, std::span<Complex> out)
{
    const std::size_t L = h.size();
    const std::size_t cols = H.cols();
    if (H.rows() != L && cols > 0) {
        throw DimensionError("zf_project: H must have as many rows as h has entries");
    }
    if (out.size() != L) {
        throw DimensionError("zf_project: output has wrong length");
    }
    if (cols >= L && L > 0) {
        throw RankDeficientError("zf_project: no null space left for the serving user");
    }
    constexpr std::size_t kMax = 16;
    if (L > kMax || cols > kMax) {
        throw DimensionError("zf_project: at most 16 antennas supported");
    }

    // Orthonormal basis of span(H) by modified Gram-Schmidt, applied twice.
    std::array<std::array<Complex, kMax>, kMax> q{};
    double min_diag = std::numeric_limits<double>::infinity();
    double max_diag = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
        auto& v = q[c];
        for (std::size_t r = 0; r < L; ++r) {
            v[r] = H(r, c);
        }
        const double original = norm(std::span<const Complex>(v.data(), L));
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                const Complex proj = inner({q[p].data(), L}, {v.data(), L});
                for (std::size_t r = 0; r < L; ++r) {
                    v[r] -= proj * q[p][r];
                }
            }
        }
        const double residual = norm(std::span<const Complex>(v.data(), L));
        if (!(residual > 0.0) || !(original > 0.0)) {
            throw RankDeficientError("zf_project: zero or dependent co-cluster channel");
        }
        min_diag = std::min(min_diag, residual);
        max_diag = std::max(max_diag, original);
        for (std::size_t r = 0; r < L; ++r) {
            v[r] /= residual;
        }
    }
    if (cols > 0) {
        const double rcond = (min_diag / max_diag) * (min_diag / max_diag);
        if (rcond < kRankDeficiencyThreshold) {
            throw RankDeficientError("zf_project: co-cluster Gram matrix is ill conditioned");
        }
    }

    std::copy(h.begin(), h.end(), out.begin());
    const double h_norm = norm(h);
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t p = 0; p < cols; ++p) {
            const Complex proj = inner({q[p].data(), L}, out);
            for (std::size_t r = 0; r < L; ++r) {
                out[r] -= proj * q[p][r];
            }
        }
    }
    const double projected = norm(out);
    if (!(h_norm > 0.0) || !(projected > std::sqrt(kRankDeficiencyThreshold) * h_norm)) {
        throw RankDeficientError("zf_project: channel lies in the span of the co-cluster channels");
    }
    for (Complex& z : out) {
        z /= projected;
    }
}

inline ComplexVector zf_project(std::span<const Complex> h, const ComplexMatrix& H)
{
    ComplexVector out(h.size());
    zf_project_into(h, H, out);
    return out;
}

} // namespace mimocache::numerics
