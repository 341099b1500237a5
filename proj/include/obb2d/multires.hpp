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

#ifndef OBB2D_MULTIRES_HPP
#define OBB2D_MULTIRES_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "obb2d/contour.hpp"

namespace obb2d {

/// Maps a closed control polygon of 2k points to one of k points.
using CoarseningFilter = std::function<std::vector<Vec2>(std::span<const Vec2>)>;

/// One analysis step with the (1/4, 1/2, 1/4) averaging filter, output point i
/// centred on input point 2i (indices mod 2k). Throws std::domain_error if
/// the output would have fewer than 4 points.
std::vector<Vec2> coarsen_once(std::span<const Vec2> points);

/// One analysis step that inverts cubic B-spline subdivision in the
/// least-squares sense: returns the k-point polygon C minimising |S C - P|^2,
/// where S is the closed cubic subdivision operator (even rows
/// (1, 6, 1) / 8, odd rows (1, 1) / 2). Output point i is again centred on
/// input point 2i. Reproduces C exactly when P = S C, so the coarse curve
/// tracks the fine curve instead of shrinking towards its centroid.
/// Same preconditions as coarsen_once.
std::vector<Vec2> coarsen_least_squares(std::span<const Vec2> points);

/// Control polygons C^n ... C^min of a contour, addressed by resolution
/// level j (2^j points at level j).
class ContourPyramid {
public:
    static constexpr int kDefaultMinLevel = 2;

    int min_level() const { return min_level_; }
    int max_level() const { return max_level_; }

    /// Control polygon at level j, min_level <= j <= max_level.
    std::span<const Vec2> level(int j) const;

    /// Level j as a zero-roughness contour, for evaluating f^j.
    const ClosedContour& contour_at(int j) const;

    const ClosedContour& base() const { return contours_.back(); }

private:
    friend ContourPyramid build_pyramid(const ClosedContour&, int, const CoarseningFilter&);

    ContourPyramid() = default;

    int min_level_ = 0;
    int max_level_ = 0;
    // contours_[j - min_level_]; the last entry is the source contour itself.
    std::vector<ClosedContour> contours_;
};

/// Repeatedly coarsens the contour's control polygon down to `min_level`.
/// Throws std::domain_error if min_level < 2 or the contour is coarser than
/// min_level.
ContourPyramid build_pyramid(const ClosedContour& contour,
                             int min_level = ContourPyramid::kDefaultMinLevel,
                             const CoarseningFilter& filter = coarsen_least_squares);

/// Dyadic correspondence: segment i at level j splits into segments 2i and
/// 2i+1 at level j+1. Throws std::domain_error when segment is already at
/// `leaf_level` or deeper.
std::pair<SegmentId, SegmentId> children_of(SegmentId segment, int leaf_level);

/// Half-open range [first, last) of level-`leaf_level` segments under `segment`.
std::pair<int, int> leaf_descendants(SegmentId segment, int leaf_level);

} // namespace obb2d

#endif // OBB2D_MULTIRES_HPP
