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

#include "obb2d/contour.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>

namespace obb2d {

int log2_exact(std::size_t m) {
    if (m == 0 || (m & (m - 1)) != 0) {
        return -1;
    }
    int n = 0;
    while ((std::size_t{1} << n) < m) {
        ++n;
    }
    return n;
}

ClosedContour::ClosedContour(std::vector<Vec2> control_points, double q_factor)
    : ClosedContour(control_points, std::vector<double>(control_points.size(), 0.0), q_factor) {}

ClosedContour::ClosedContour(std::vector<Vec2> control_points, std::vector<double> sigma,
                             double q_factor)
    : points_(std::move(control_points)), sigma_(std::move(sigma)), q_factor_(q_factor) {
    level_ = log2_exact(points_.size());
    if (level_ < 2) {
        throw std::invalid_argument("contour needs a power-of-two number of control points >= 4, got " +
                                    std::to_string(points_.size()));
    }
    if (sigma_.size() != points_.size()) {
        throw std::invalid_argument("sigma list has " + std::to_string(sigma_.size()) +
                                    " entries, expected " + std::to_string(points_.size()));
    }
    for (double s : sigma_) {
        if (!(s >= 0.0)) {
            throw std::invalid_argument("sigma must be non-negative");
        }
    }
    if (!(q_factor_ > 0.0)) {
        throw std::invalid_argument("q_factor must be positive");
    }
}

const Vec2& ClosedContour::control_point(std::int64_t i) const {
    const auto m = static_cast<std::int64_t>(points_.size());
    return points_[static_cast<std::size_t>(((i % m) + m) % m)];
}

namespace {

void check_segment(const ClosedContour& contour, int segment) {
    if (segment < 0 || static_cast<std::size_t>(segment) >= contour.segment_count()) {
        throw std::domain_error("segment index " + std::to_string(segment) + " out of range [0, " +
                                std::to_string(contour.segment_count()) + ")");
    }
}

} // namespace

Vec2 evaluate_segment(const ClosedContour& contour, int segment, double t) {
    check_segment(contour, segment);
    if (!(t >= 0.0 && t <= 1.0)) {
        throw std::domain_error("segment parameter outside [0, 1]");
    }
    const double s = 1.0 - t;
    const double t2 = t * t;
    const double t3 = t2 * t;
    const double b0 = s * s * s / 6.0;
    const double b1 = (3.0 * t3 - 6.0 * t2 + 4.0) / 6.0;
    const double b2 = (-3.0 * t3 + 3.0 * t2 + 3.0 * t + 1.0) / 6.0;
    const double b3 = t3 / 6.0;
    return b0 * contour.control_point(segment - 1) + b1 * contour.control_point(segment) +
           b2 * contour.control_point(segment + 1) + b3 * contour.control_point(segment + 2);
}

Vec2 segment_derivative(const ClosedContour& contour, int segment, double t) {
    check_segment(contour, segment);
    const double s = 1.0 - t;
    const double d0 = -0.5 * s * s;
    const double d1 = 1.5 * t * t - 2.0 * t;
    const double d2 = -1.5 * t * t + t + 0.5;
    const double d3 = 0.5 * t * t;
    return d0 * contour.control_point(segment - 1) + d1 * contour.control_point(segment) +
           d2 * contour.control_point(segment + 1) + d3 * contour.control_point(segment + 2);
}

Vec2 segment_normal(const ClosedContour& contour, int segment, double t) {
    Vec2 tangent = segment_derivative(contour, segment, t);
    double len = norm(tangent);
    if (len <= 1e-300) {
        tangent = evaluate_segment(contour, segment, 1.0) - evaluate_segment(contour, segment, 0.0);
        len = norm(tangent);
        if (len <= 1e-300) {
            return {0.0, 1.0};
        }
    }
    return Vec2{tangent.y, -tangent.x} / len;
}

SegmentPolynomial segment_polynomial(const ClosedContour& contour, int segment) {
    check_segment(contour, segment);
    const Vec2& p0 = contour.control_point(segment - 1);
    const Vec2& p1 = contour.control_point(segment);
    const Vec2& p2 = contour.control_point(segment + 1);
    const Vec2& p3 = contour.control_point(segment + 2);
    SegmentPolynomial poly;
    poly.a0 = (p0 + 4.0 * p1 + p2) / 6.0;
    poly.a1 = (p2 - p0) / 2.0;
    poly.a2 = (p0 - 2.0 * p1 + p2) / 2.0;
    poly.a3 = (-1.0 * p0 + 3.0 * p1 - 3.0 * p2 + p3) / 6.0;
    return poly;
}

namespace {

double chord_sum(const SegmentPolynomial& poly, int pieces) {
    double total = 0.0;
    Vec2 prev = poly(0.0);
    for (int k = 1; k <= pieces; ++k) {
        const Vec2 cur = poly(static_cast<double>(k) / pieces);
        total += distance(prev, cur);
        prev = cur;
    }
    return total;
}

std::vector<Vec2> arc_length_samples(const ClosedContour& contour, int segment, int r) {
    constexpr int kTable = 1024;
    const SegmentPolynomial poly = segment_polynomial(contour, segment);
    std::vector<double> cumulative(kTable + 1, 0.0);
    Vec2 prev = poly(0.0);
    for (int k = 1; k <= kTable; ++k) {
        const Vec2 cur = poly(static_cast<double>(k) / kTable);
        cumulative[k] = cumulative[k - 1] + distance(prev, cur);
        prev = cur;
    }
    const double total = cumulative.back();
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) {
        if (k == 0 || total <= 0.0) {
            out.push_back(evaluate_segment(contour, segment, static_cast<double>(k) / (r - 1)));
            continue;
        }
        if (k == r - 1) {
            out.push_back(evaluate_segment(contour, segment, 1.0));
            continue;
        }
        const double target = total * k / (r - 1);
        const auto it = std::lower_bound(cumulative.begin(), cumulative.end(), target);
        const auto hi = static_cast<int>(std::distance(cumulative.begin(), it));
        const int lo = std::max(hi - 1, 0);
        const double span = cumulative[hi] - cumulative[lo];
        const double frac = span > 0.0 ? (target - cumulative[lo]) / span : 0.0;
        const double t = std::clamp((lo + frac) / kTable, 0.0, 1.0);
        out.push_back(evaluate_segment(contour, segment, t));
    }
    return out;
}

} // namespace

std::vector<Vec2> sample_segment_uniform(const ClosedContour& contour, int segment, int r,
                                         SampleSpacing spacing) {
    check_segment(contour, segment);
    if (r < 2) {
        throw std::domain_error("need at least 2 samples per segment");
    }
    if (spacing == SampleSpacing::ArcLength) {
        return arc_length_samples(contour, segment, r);
    }
    std::vector<Vec2> out;
    out.reserve(static_cast<std::size_t>(r));
    for (int k = 0; k < r; ++k) {
        out.push_back(evaluate_segment(contour, segment, static_cast<double>(k) / (r - 1)));
    }
    return out;
}

double segment_arc_length(const ClosedContour& contour, int segment) {
    const SegmentPolynomial poly = segment_polynomial(contour, segment);
    constexpr int kMaxPieces = 1 << 22;
    int pieces = 16;
    double coarse = chord_sum(poly, pieces);
    while (pieces < kMaxPieces) {
        pieces *= 2;
        const double fine = chord_sum(poly, pieces);
        const double change = fine - coarse;
        if (std::abs(change) <= 1e-9 * fine) {
            // chord sums converge as O(h^2)
            return fine + change / 3.0;
        }
        coarse = fine;
    }
    return coarse;
}

double segment_tolerance(const ClosedContour& contour, int segment) {
    check_segment(contour, segment);
    return contour.q_factor() * contour.sigma()[static_cast<std::size_t>(segment)];
}

std::vector<Vec2> synthesize_rough_polyline(const ClosedContour& contour, int segment, int r,
                                            std::uint64_t seed) {
    std::vector<Vec2> points = sample_segment_uniform(contour, segment, r);
    const double sigma = contour.sigma()[static_cast<std::size_t>(segment)];
    if (sigma == 0.0) {
        return points;
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(segment)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> noise(0.0, sigma);
    for (int k = 0; k < r; ++k) {
        const double t = static_cast<double>(k) / (r - 1);
        points[static_cast<std::size_t>(k)] += noise(rng) * segment_normal(contour, segment, t);
    }
    return points;
}

} // namespace obb2d
