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

#ifndef OBB2D_OBBFIT_HPP
#define OBB2D_OBBFIT_HPP

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "obb2d/contour.hpp"
#include "obb2d/multires.hpp"

namespace obb2d {

/// Oriented box b_i^j. Extents of elementary boxes already include the
/// roughness tolerance; `tolerance` is kept for the narrow phase.
struct OrientedBox {
    Vec2 center;
    Vec2 axis1{1.0, 0.0};
    Vec2 axis2{0.0, 1.0};
    double half_extent1 = 0.0;
    double half_extent2 = 0.0;
    double tolerance = 0.0;
    /// Arc length of the bounded contour portion.
    double segment_length = 0.0;
    /// Leaf segments covered, half-open [first, second).
    std::array<int, 2> leaf_range{0, 0};

    double area() const { return 4.0 * half_extent1 * half_extent2; }

    /// Corners in counter-clockwise order (for right-handed axes).
    std::array<Vec2, 4> corners() const;

    /// Largest signed distance by which p exceeds the box along either axis;
    /// <= 0 means inside.
    double excess(const Vec2& p) const;
};

/// Raw second moments about the mean: xx, xy, yy.
struct Covariance2 {
    double xx = 0.0;
    double xy = 0.0;
    double yy = 0.0;
    Vec2 mean;
};

struct Axes {
    Vec2 axis1{1.0, 0.0};
    Vec2 axis2{0.0, 1.0};
};

/// Mean and covariance of r >= 2 points, omega_xy = (1/r) sum(x y) - mean_x mean_y.
Covariance2 covariance_of_points(std::span<const Vec2> points);

/// Covariance of points weighted by non-negative weights (normalised by
/// their sum, centred form). Throws std::domain_error when the total weight
/// is not positive.
Covariance2 weighted_covariance(std::span<const Vec2> points, std::span<const double> weights);

/// Unit eigenvector of the larger eigenvalue as axis1, axis2 = axis1 rotated
/// +90 degrees. When the eigenvalues are indistinguishable (discriminant
/// below 1e-12 * trace^2, including the all-zero matrix) the direction of
/// `fallback` is used, or (1, 0) if that is zero too. axis1 is flipped so
/// its first non-zero component is positive.
Axes principal_axes(const Covariance2& cov, Vec2 fallback = {1.0, 0.0});

struct ElementaryFitOptions {
    /// Points sampled for the orientation step.
    int samples = 5;
    SampleSpacing spacing = SampleSpacing::Parameter;
};

/// Tight box around segment `segment` plus its roughness.
///
/// Axes come from the covariance of `samples` points on the segment (chord
/// direction when degenerate). The smooth cubic is then projected onto each
/// axis; its projection is a cubic polynomial in t, so the extreme values
/// are found exactly at the endpoints and the critical points. Finally both
/// half-extents grow by zeta_i.
OrientedBox fit_elementary_box(const ClosedContour& contour, int segment,
                               const ElementaryFitOptions& options = {});

/// Orientation of a super box from its elementary boxes: covariance of the
/// box centres weighted by the lengths of their segments.
Axes superbox_axes_elementary(std::span<const OrientedBox> leaf_boxes);

/// Orientation of super box b_i^j from segment f_i^j of the coarse contour.
/// Returns nullopt below the pyramid's min_level (caller must fall back to
/// superbox_axes_elementary). Throws std::domain_error for an invalid segment.
std::optional<Axes> superbox_axes_multires(const ContourPyramid& pyramid, SegmentId segment,
                                           const ElementaryFitOptions& options = {});

/// Box with the given axes enclosing every corner of the children.
/// Tolerance is the largest child tolerance; lengths add up; leaf ranges merge.
OrientedBox fit_superbox(const Axes& axes, std::span<const OrientedBox> children);

} // namespace obb2d

#endif // OBB2D_OBBFIT_HPP
