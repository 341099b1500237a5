// Copyright 2026 The obb2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "obb2d/multires.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace obb2d {

std::vector<Vec2> coarsen_once(std::span<const Vec2> points) {
    const std::size_t size = points.size();
    if (size % 2 != 0 || size < 8) {
        throw std::domain_error("coarsening needs an even polygon of at least 8 points, got " +
                                std::to_string(size));
    }
    const std::size_t half = size / 2;
    std::vector<Vec2> out(half);
    for (std::size_t i = 0; i < half; ++i) {
        const Vec2& prev = points[(2 * i + size - 1) % size];
        const Vec2& mid = points[2 * i];
        const Vec2& next = points[(2 * i + 1) % size];
        out[i] = 0.25 * prev + 0.5 * mid + 0.25 * next;
    }
    return out;
}

std::vector<Vec2> coarsen_least_squares(std::span<const Vec2> points) {
    const std::size_t size = points.size();
    if (size % 2 != 0 || size < 8) {
        throw std::domain_error("coarsening needs an even polygon of at least 8 points, got " +
                                std::to_string(size));
    }
    const std::size_t k = size / 2;
    auto fine = [&](std::size_t i, std::ptrdiff_t offset) -> const Vec2& {
        const auto wrapped = static_cast<std::ptrdiff_t>(i + size) + offset;
        return points[static_cast<std::size_t>(wrapped) % size];
    };

    // Normal equations (S^T S) C = S^T P. S^T S is circulant with stencil
    // (1, 28, 70, 28, 1) / 64, folded when k is small.
    std::vector<double> stencil(k, 0.0);
    const double taps[5] = {1.0 / 64, 28.0 / 64, 70.0 / 64, 28.0 / 64, 1.0 / 64};
    for (int d = -2; d <= 2; ++d) {
        stencil[static_cast<std::size_t>(d + static_cast<int>(k)) % k] += taps[d + 2];
    }
    std::vector<Vec2> rhs(k);
    for (std::size_t i = 0; i < k; ++i) {
        rhs[i] = (fine(2 * i, -2) + 6.0 * fine(2 * i, 0) + fine(2 * i, 2)) / 8.0 +
                 (fine(2 * i, -1) + fine(2 * i, 1)) / 2.0;
    }

    // Diagonalise the circulant system with a direct DFT; k is at most a few hundred.
    using Complex = std::complex<double>;
    std::vector<Complex> twiddle(k);
    for (std::size_t q = 0; q < k; ++q) {
        const double angle = -2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(k);
        twiddle[q] = Complex(std::cos(angle), std::sin(angle));
    }
    std::vector<Complex> spectrum_x(k), spectrum_y(k);
    for (std::size_t w = 0; w < k; ++w) {
        Complex sx, sy;
        double eigen = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const Complex& tw = twiddle[(w * i) % k];
            sx += rhs[i].x * tw;
            sy += rhs[i].y * tw;
            eigen += stencil[i] * tw.real();
        }
        spectrum_x[w] = sx / eigen;
        spectrum_y[w] = sy / eigen;
    }
    std::vector<Vec2> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        Complex sx, sy;
        for (std::size_t w = 0; w < k; ++w) {
            const Complex tw = std::conj(twiddle[(w * i) % k]);
            sx += spectrum_x[w] * tw;
            sy += spectrum_y[w] * tw;
        }
        out[i] = Vec2{sx.real(), sy.real()} / static_cast<double>(k);
    }
    return out;
}

std::span<const Vec2> ContourPyramid::level(int j) const { return contour_at(j).control_points(); }

const ClosedContour& ContourPyramid::contour_at(int j) const {
    if (j < min_level_ || j > max_level_) {
        throw std::domain_error("pyramid level " + std::to_string(j) + " outside [" +
                                std::to_string(min_level_) + ", " + std::to_string(max_level_) + "]");
    }
    return contours_[static_cast<std::size_t>(j - min_level_)];
}

ContourPyramid build_pyramid(const ClosedContour& contour, int min_level,
                             const CoarseningFilter& filter) {
    if (min_level < 2) {
        throw std::domain_error("pyramid min_level must be >= 2");
    }
    const int n = contour.level();
    if (n < min_level) {
        throw std::domain_error("contour level " + std::to_string(n) + " is below min_level " +
                                std::to_string(min_level));
    }
    ContourPyramid pyramid;
    pyramid.min_level_ = min_level;
    pyramid.max_level_ = n;

    std::vector<std::vector<Vec2>> polygons;
    polygons.emplace_back(contour.control_points().begin(), contour.control_points().end());
    for (int j = n; j > min_level; --j) {
        std::vector<Vec2> coarse = filter(polygons.back());
        if (coarse.size() * 2 != polygons.back().size()) {
            throw std::logic_error("coarsening filter must halve the control polygon");
        }
        polygons.push_back(std::move(coarse));
    }
    pyramid.contours_.reserve(polygons.size());
    for (auto it = polygons.rbegin(); it != polygons.rend() - 1; ++it) {
        pyramid.contours_.emplace_back(std::move(*it), contour.q_factor());
    }
    pyramid.contours_.push_back(contour);
    return pyramid;
}

std::pair<SegmentId, SegmentId> children_of(SegmentId segment, int leaf_level) {
    if (segment.level >= leaf_level) {
        throw std::domain_error("segment at level " + std::to_string(segment.level) +
                                " has no children below leaf level " + std::to_string(leaf_level));
    }
    return {SegmentId{segment.level + 1, 2 * segment.index},
            SegmentId{segment.level + 1, 2 * segment.index + 1}};
}

std::pair<int, int> leaf_descendants(SegmentId segment, int leaf_level) {
    if (segment.level > leaf_level || segment.level < 0) {
        throw std::domain_error("segment level outside [0, leaf_level]");
    }
    const int span = 1 << (leaf_level - segment.level);
    return {segment.index * span, (segment.index + 1) * span};
}

} // namespace obb2d
