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

#ifndef OBB2D_CONTOUR_HPP
#define OBB2D_CONTOUR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "obb2d/vec2.hpp"

namespace obb2d {

/// Identifies segment f_i^j: segment `index` of the contour at resolution `level`.
/// Level j holds 2^j segments.
struct SegmentId {
    int level = 0;
    int index = 0;

    friend constexpr bool operator==(const SegmentId&, const SegmentId&) = default;
};

/// Returns n such that m == 2^n, or -1 if m is not a power of two.
int log2_exact(std::size_t m);

/// Closed object boundary: a periodic uniform cubic B-spline over m control
/// points, one curve segment per control point, each carrying a Gaussian
/// roughness standard deviation.
///
/// Segment i is driven by control points c[i-1], c[i], c[i+1], c[i+2]
/// (indices mod m), so local parameter t = 1 of segment i coincides with
/// t = 0 of segment i+1 and the curve closes on itself.
///
/// m must be a power of two, at least 4. Immutable after construction.
class ClosedContour {
public:
    static constexpr double kDefaultQFactor = 3.0;

    /// Zero roughness on every segment.
    explicit ClosedContour(std::vector<Vec2> control_points,
                           double q_factor = kDefaultQFactor);

    /// Throws std::invalid_argument on a non power-of-two size, a sigma list
    /// of the wrong length, negative sigma, or non-positive q_factor.
    ClosedContour(std::vector<Vec2> control_points, std::vector<double> sigma,
                  double q_factor = kDefaultQFactor);

    std::size_t size() const { return points_.size(); }
    std::size_t segment_count() const { return points_.size(); }
    /// log2 of the segment count.
    int level() const { return level_; }

    std::span<const Vec2> control_points() const { return points_; }
    std::span<const double> sigma() const { return sigma_; }
    double q_factor() const { return q_factor_; }

    /// Control point with periodic wraparound; any integer index is valid.
    const Vec2& control_point(std::int64_t i) const;

private:
    std::vector<Vec2> points_;
    std::vector<double> sigma_;
    double q_factor_;
    int level_;
};

/// Smooth (noise-free) point of segment `segment` at local parameter t in [0, 1].
/// Throws std::domain_error for an out-of-range segment or t.
Vec2 evaluate_segment(const ClosedContour& contour, int segment, double t);

/// First derivative d/dt of the segment at t.
Vec2 segment_derivative(const ClosedContour& contour, int segment, double t);

/// Unit normal (tangent rotated -90 degrees, outward for counter-clockwise
/// contours). Falls back to the chord normal, then (0, 1), when the tangent
/// vanishes.
Vec2 segment_normal(const ClosedContour& contour, int segment, double t);

/// Power-basis coefficients of a segment: p(t) = a0 + a1 t + a2 t^2 + a3 t^3.
struct SegmentPolynomial {
    Vec2 a0, a1, a2, a3;

    Vec2 operator()(double t) const { return a0 + t * (a1 + t * (a2 + t * a3)); }
};

SegmentPolynomial segment_polynomial(const ClosedContour& contour, int segment);

enum class SampleSpacing {
    Parameter, ///< t = k / (r - 1)
    ArcLength, ///< equal arc-length steps along the segment
};

/// r points on the smooth segment, endpoints included. Throws
/// std::domain_error when r < 2.
std::vector<Vec2> sample_segment_uniform(const ClosedContour& contour, int segment, int r,
                                         SampleSpacing spacing = SampleSpacing::Parameter);

/// Arc length l_i of the smooth segment. Chord sums are refined by doubling
/// until the relative change drops below 1e-9, then Richardson-extrapolated.
double segment_arc_length(const ClosedContour& contour, int segment);

/// Roughness tolerance zeta_i = q_factor * sigma_i.
double segment_tolerance(const ClosedContour& contour, int segment);

/// Samples r smooth points and pushes each along the local normal by a draw
/// from N(0, sigma_i^2). Deterministic for a fixed (seed, segment).
std::vector<Vec2> synthesize_rough_polyline(const ClosedContour& contour, int segment, int r,
                                            std::uint64_t seed);

} // namespace obb2d

#endif // OBB2D_CONTOUR_HPP
