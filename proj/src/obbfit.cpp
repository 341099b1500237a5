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

#include "obb2d/obbfit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace obb2d {

std::array<Vec2, 4> OrientedBox::corners() const {
    const Vec2 e1 = half_extent1 * axis1;
    const Vec2 e2 = half_extent2 * axis2;
    return {center - e1 - e2, center + e1 - e2, center + e1 + e2, center - e1 + e2};
}

double OrientedBox::excess(const Vec2& p) const {
    const Vec2 d = p - center;
    return std::max(std::abs(dot(d, axis1)) - half_extent1, std::abs(dot(d, axis2)) - half_extent2);
}

Covariance2 covariance_of_points(std::span<const Vec2> points) {
    if (points.size() < 2) {
        throw std::domain_error("covariance needs at least 2 points");
    }
    const double inv = 1.0 / static_cast<double>(points.size());
    // moments are taken about the first point; the formula is shift-invariant
    const Vec2 shift = points.front();
    Vec2 sum;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (const Vec2& p : points) {
        const Vec2 d = p - shift;
        sum += d;
        sxx += d.x * d.x;
        sxy += d.x * d.y;
        syy += d.y * d.y;
    }
    const Vec2 mean = sum * inv;
    Covariance2 cov;
    cov.mean = shift + mean;
    cov.xx = sxx * inv - mean.x * mean.x;
    cov.xy = sxy * inv - mean.x * mean.y;
    cov.yy = syy * inv - mean.y * mean.y;
    return cov;
}

Covariance2 weighted_covariance(std::span<const Vec2> points, std::span<const double> weights) {
    if (points.size() != weights.size() || points.empty()) {
        throw std::domain_error("weighted covariance needs one weight per point");
    }
    double total = 0.0;
    Vec2 sum;
    for (std::size_t k = 0; k < points.size(); ++k) {
        total += weights[k];
        sum += weights[k] * points[k];
    }
    if (!(total > 0.0)) {
        throw std::domain_error("total weight (segment length) is zero");
    }
    Covariance2 cov;
    cov.mean = sum / total;
    for (std::size_t k = 0; k < points.size(); ++k) {
        const Vec2 d = points[k] - cov.mean;
        cov.xx += weights[k] * d.x * d.x;
        cov.xy += weights[k] * d.x * d.y;
        cov.yy += weights[k] * d.y * d.y;
    }
    cov.xx /= total;
    cov.xy /= total;
    cov.yy /= total;
    return cov;
}

namespace {

Vec2 canonical_sign(Vec2 v) {
    if (v.x < 0.0 || (v.x == 0.0 && v.y < 0.0)) {
        return -v;
    }
    return v;
}

Axes axes_from(Vec2 direction) {
    const double len = norm(direction);
    Vec2 a1 = len > 0.0 ? direction / len : Vec2{1.0, 0.0};
    a1 = canonical_sign(a1);
    return {a1, perp(a1)};
}

} // namespace

Axes principal_axes(const Covariance2& cov, Vec2 fallback) {
    const double trace = cov.xx + cov.yy;
    const double diff = cov.xx - cov.yy;
    const double disc = diff * diff + 4.0 * cov.xy * cov.xy;
    if (!(trace > 0.0) || disc <= 1e-12 * trace * trace) {
        return axes_from(fallback);
    }
    const double lambda1 = 0.5 * (trace + std::sqrt(disc));
    // pick the better-conditioned of the two equivalent eigenvector forms
    const Vec2 v = cov.xx >= cov.yy ? Vec2{lambda1 - cov.yy, cov.xy} : Vec2{cov.xy, lambda1 - cov.xx};
    return axes_from(v);
}

namespace {

struct Interval {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();

    void add(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    double mid() const { return 0.5 * (lo + hi); }
    double half() const { return 0.5 * (hi - lo); }
};

// Range of dot(poly(t) - origin, axis) over t in [0, 1].
Interval project_cubic(const SegmentPolynomial& poly, const Vec2& origin, const Vec2& axis) {
    const double c0 = dot(poly.a0 - origin, axis);
    const double c1 = dot(poly.a1, axis);
    const double c2 = dot(poly.a2, axis);
    const double c3 = dot(poly.a3, axis);
    auto value = [&](double t) { return c0 + t * (c1 + t * (c2 + t * c3)); };

    Interval range;
    range.add(value(0.0));
    range.add(value(1.0));

    // derivative: c1 + 2 c2 t + 3 c3 t^2
    const double qa = 3.0 * c3;
    const double qb = 2.0 * c2;
    const double qc = c1;
    auto consider = [&](double t) {
        if (t > 0.0 && t < 1.0) {
            range.add(value(t));
        }
    };
    const double scale = std::abs(qa) + std::abs(qb) + std::abs(qc);
    if (scale == 0.0) {
        return range;
    }
    if (std::abs(qa) <= 1e-14 * scale) {
        if (qb != 0.0) {
            consider(-qc / qb);
        }
        return range;
    }
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) {
        return range;
    }
    const double root = std::sqrt(disc);
    const double q = -0.5 * (qb + std::copysign(root, qb));
    consider(q / qa);
    if (q != 0.0) {
        consider(qc / q);
    }
    return range;
}

} // namespace

OrientedBox fit_elementary_box(const ClosedContour& contour, int segment,
                               const ElementaryFitOptions& options) {
    const std::vector<Vec2> samples =
        sample_segment_uniform(contour, segment, options.samples, options.spacing);
    const Covariance2 cov = covariance_of_points(samples);
    const Axes axes = principal_axes(cov, samples.back() - samples.front());

    const SegmentPolynomial poly = segment_polynomial(contour, segment);
    const Interval along1 = project_cubic(poly, cov.mean, axes.axis1);
    const Interval along2 = project_cubic(poly, cov.mean, axes.axis2);
    const double zeta = segment_tolerance(contour, segment);

    OrientedBox box;
    box.axis1 = axes.axis1;
    box.axis2 = axes.axis2;
    box.center = cov.mean + along1.mid() * axes.axis1 + along2.mid() * axes.axis2;
    box.half_extent1 = along1.half() + zeta;
    box.half_extent2 = along2.half() + zeta;
    box.tolerance = zeta;
    box.segment_length = segment_arc_length(contour, segment);
    box.leaf_range = {segment, segment + 1};
    return box;
}

Axes superbox_axes_elementary(std::span<const OrientedBox> leaf_boxes) {
    if (leaf_boxes.size() < 2) {
        throw std::domain_error("super box adaptation needs at least 2 boxes");
    }
    std::vector<Vec2> centroids;
    std::vector<double> lengths;
    centroids.reserve(leaf_boxes.size());
    lengths.reserve(leaf_boxes.size());
    for (const OrientedBox& box : leaf_boxes) {
        centroids.push_back(box.center);
        lengths.push_back(box.segment_length);
    }
    const Covariance2 cov = weighted_covariance(centroids, lengths);
    return principal_axes(cov, centroids.back() - centroids.front());
}

std::optional<Axes> superbox_axes_multires(const ContourPyramid& pyramid, SegmentId segment,
                                           const ElementaryFitOptions& options) {
    if (segment.level > pyramid.max_level() || segment.index < 0 ||
        segment.index >= (1 << segment.level)) {
        throw std::domain_error("segment outside the pyramid");
    }
    if (segment.level < pyramid.min_level()) {
        return std::nullopt;
    }
    const ClosedContour& coarse = pyramid.contour_at(segment.level);
    const std::vector<Vec2> samples =
        sample_segment_uniform(coarse, segment.index, options.samples, options.spacing);
    const Covariance2 cov = covariance_of_points(samples);
    return principal_axes(cov, samples.back() - samples.front());
}

OrientedBox fit_superbox(const Axes& axes, std::span<const OrientedBox> children) {
    if (children.empty()) {
        throw std::domain_error("super box needs at least one child");
    }
    double total = 0.0;
    Vec2 weighted;
    Vec2 plain;
    for (const OrientedBox& child : children) {
        total += child.segment_length;
        weighted += child.segment_length * child.center;
        plain += child.center;
    }
    const Vec2 origin = total > 0.0 ? weighted / total
                                    : plain / static_cast<double>(children.size());

    Interval along1;
    Interval along2;
    OrientedBox box;
    box.leaf_range = children.front().leaf_range;
    for (const OrientedBox& child : children) {
        for (const Vec2& corner : child.corners()) {
            const Vec2 d = corner - origin;
            along1.add(dot(d, axes.axis1));
            along2.add(dot(d, axes.axis2));
        }
        box.tolerance = std::max(box.tolerance, child.tolerance);
        box.segment_length += child.segment_length;
        box.leaf_range[0] = std::min(box.leaf_range[0], child.leaf_range[0]);
        box.leaf_range[1] = std::max(box.leaf_range[1], child.leaf_range[1]);
    }
    box.axis1 = axes.axis1;
    box.axis2 = axes.axis2;
    box.center = origin + along1.mid() * axes.axis1 + along2.mid() * axes.axis2;
    box.half_extent1 = along1.half();
    box.half_extent2 = along2.half();
    return box;
}

} // namespace obb2d
