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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "obb2d/contour.hpp"
#include "oracles.hpp"

using namespace obb2d;

namespace {

ClosedContour unit_square() { return ClosedContour({{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

ClosedContour octagon(double sigma = 0.0, double q = 3.0) {
    return ClosedContour(oracle::regular_polygon(8, 1.0), std::vector<double>(8, sigma), q);
}

/// Control points equally spaced on a line through segments 0..2 so that
/// segment 1 is an exactly linear (uniformly parameterised) span.
ClosedContour with_straight_segment(double spacing) {
    return ClosedContour({{0, 0}, {spacing, 0}, {2 * spacing, 0}, {3 * spacing, 0}, {3 * spacing, 5},
                          {2 * spacing, 6}, {spacing, 6}, {0, 5}});
}

} // namespace

TEST(ClosedContourTest, RejectsNonPowerOfTwo) {
    EXPECT_THROW(ClosedContour({{0, 0}, {1, 0}, {1, 1}}), std::invalid_argument);
    EXPECT_THROW(ClosedContour(std::vector<Vec2>(6)), std::invalid_argument);
    EXPECT_THROW(ClosedContour(std::vector<Vec2>(2)), std::invalid_argument);
    EXPECT_NO_THROW(ClosedContour(std::vector<Vec2>(4)));
}

TEST(ClosedContourTest, RejectsBadSigmaAndQ) {
    const std::vector<Vec2> pts(4);
    EXPECT_THROW(ClosedContour(pts, {0.1, 0.1, -0.1, 0.1}), std::invalid_argument);
    EXPECT_THROW(ClosedContour(pts, {0.1, 0.1}), std::invalid_argument);
    EXPECT_THROW(ClosedContour(pts, {0, 0, 0, 0}, 0.0), std::invalid_argument);
}

TEST(EvaluateSegmentTest, KnotValueOnSquare) {
    const Vec2 p = evaluate_segment(unit_square(), 0, 0.0);
    EXPECT_NEAR(p.x, 1.0 / 6.0, 1e-15);
    EXPECT_NEAR(p.y, 1.0 / 6.0, 1e-15);
}

TEST(EvaluateSegmentTest, EndOfSegmentIsStartOfNext) {
    const ClosedContour c = octagon();
    for (int i = 0; i < 8; ++i) {
        const Vec2 end = evaluate_segment(c, i, 1.0);
        const Vec2 next = evaluate_segment(c, (i + 1) % 8, 0.0);
        EXPECT_NEAR(end.x, next.x, 1e-12);
        EXPECT_NEAR(end.y, next.y, 1e-12);
    }
}

TEST(EvaluateSegmentTest, MatchesDeBoorOnOctagon) {
    const ClosedContour c = octagon();
    const auto pts = oracle::regular_polygon(8, 1.0);
    const Vec2 p = evaluate_segment(c, 3, 0.5);
    const Vec2 q = oracle::de_boor(pts, 3, 0.5);
    EXPECT_NEAR(p.x, q.x, 1e-14);
    EXPECT_NEAR(p.y, q.y, 1e-14);
    for (int i = 0; i < 8; ++i) {
        for (double t : {0.0, 0.1, 0.37, 0.9, 1.0}) {
            const Vec2 a = evaluate_segment(c, i, t);
            const Vec2 b = oracle::de_boor(pts, i, t);
            EXPECT_NEAR(distance(a, b), 0.0, 1e-14) << "segment " << i << " t " << t;
        }
    }
}

TEST(EvaluateSegmentTest, DomainErrors) {
    const ClosedContour c = unit_square();
    EXPECT_THROW(evaluate_segment(c, 4, 0.5), std::domain_error);
    EXPECT_THROW(evaluate_segment(c, -1, 0.5), std::domain_error);
    EXPECT_THROW(evaluate_segment(c, 0, 1.5), std::domain_error);
}

TEST(EvaluateSegmentTest, PolynomialFormAgrees) {
    const ClosedContour c = octagon();
    for (int i = 0; i < 8; ++i) {
        const SegmentPolynomial poly = segment_polynomial(c, i);
        for (double t = 0.0; t <= 1.0; t += 0.125) {
            EXPECT_NEAR(distance(poly(t), evaluate_segment(c, i, t)), 0.0, 1e-14);
        }
    }
}

TEST(ContourProperties, ClosesAtTheSeam) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::vector<Vec2> pts(16);
    for (auto& p : pts) {
        p = {u(rng), u(rng)};
    }
    const ClosedContour c(pts);
    // global parameter s in [0, m]; s = 0 and s = m are the same point
    double worst = distance(evaluate_segment(c, 0, 0.0), evaluate_segment(c, 15, 1.0));
    for (int k = 0; k < 256; ++k) {
        const double s = 16.0 * k / 256.0;
        const int seg = static_cast<int>(std::floor(s));
        const double t = s - seg;
        const Vec2 here = evaluate_segment(c, seg, t);
        // same point reached from the previous segment at t = 1 when on a knot
        if (t == 0.0) {
            const Vec2 prev = evaluate_segment(c, (seg + 15) % 16, 1.0);
            worst = std::max(worst, distance(here, prev));
        }
    }
    EXPECT_LT(worst, 1e-12);
}

TEST(ContourProperties, RigidEquivariance) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec2> pts(8);
        for (auto& p : pts) {
            p = {u(rng), u(rng)};
        }
        const double angle = u(rng);
        const Vec2 shift{u(rng), u(rng)};
        auto move = [&](const Vec2& p) {
            return Vec2{std::cos(angle) * p.x - std::sin(angle) * p.y + shift.x,
                        std::sin(angle) * p.x + std::cos(angle) * p.y + shift.y};
        };
        std::vector<Vec2> moved;
        for (const auto& p : pts) {
            moved.push_back(move(p));
        }
        const ClosedContour a(pts);
        const ClosedContour b(moved);
        for (int i = 0; i < 8; ++i) {
            for (double t : {0.0, 0.3, 0.8, 1.0}) {
                EXPECT_LT(distance(move(evaluate_segment(a, i, t)), evaluate_segment(b, i, t)), 1e-12);
            }
        }
    }
}

TEST(ContourProperties, ConvexHullOfDefiningPoints) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    std::vector<Vec2> pts(16);
    for (auto& p : pts) {
        p = {u(rng), u(rng)};
    }
    const ClosedContour c(pts);
    for (int i = 0; i < 16; ++i) {
        std::array<Vec2, 4> local = {c.control_point(i - 1), c.control_point(i), c.control_point(i + 1),
                                     c.control_point(i + 2)};
        for (double t = 0.0; t <= 1.0; t += 1.0 / 32) {
            const Vec2 p = evaluate_segment(c, i, t);
            // p must be a convex combination: inside the hull of 4 points means
            // it lies in one of the 4 triangles spanned by them
            bool inside = false;
            for (int skip = 0; skip < 4 && !inside; ++skip) {
                std::array<Vec2, 3> tri;
                int n = 0;
                for (int q = 0; q < 4; ++q) {
                    if (q != skip) {
                        tri[static_cast<std::size_t>(n++)] = local[static_cast<std::size_t>(q)];
                    }
                }
                const double area = cross(tri[1] - tri[0], tri[2] - tri[0]);
                const double s = area >= 0 ? 1.0 : -1.0;
                const double tol = 1e-12 * (1.0 + std::abs(area));
                inside = s * cross(tri[1] - tri[0], p - tri[0]) >= -tol &&
                         s * cross(tri[2] - tri[1], p - tri[1]) >= -tol &&
                         s * cross(tri[0] - tri[2], p - tri[2]) >= -tol;
            }
            EXPECT_TRUE(inside) << "segment " << i << " t " << t;
        }
    }
}

TEST(SampleSegmentTest, TwoSamplesAreEndpoints) {
    const ClosedContour c = octagon();
    const auto s = sample_segment_uniform(c, 2, 2);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0], evaluate_segment(c, 2, 0.0));
    EXPECT_EQ(s[1], evaluate_segment(c, 2, 1.0));
}

TEST(SampleSegmentTest, StraightSegmentIsCollinear) {
    const ClosedContour c = with_straight_segment(2.0);
    const auto s = sample_segment_uniform(c, 1, 5);
    for (const Vec2& p : s) {
        EXPECT_NEAR(p.y, 0.0, 1e-15);
    }
}

TEST(SampleSegmentTest, MatchesDeBoorAtQuarterSteps) {
    const ClosedContour c = octagon();
    const auto pts = oracle::regular_polygon(8, 1.0);
    const auto s = sample_segment_uniform(c, 0, 5);
    for (int k = 0; k < 5; ++k) {
        EXPECT_LT(distance(s[static_cast<std::size_t>(k)], oracle::de_boor(pts, 0, k * 0.25)), 1e-14);
    }
}

TEST(SampleSegmentTest, RejectsTooFewSamples) {
    EXPECT_THROW(sample_segment_uniform(octagon(), 0, 1), std::domain_error);
}

TEST(SampleSegmentTest, ArcLengthSpacingIsEven) {
    std::vector<Vec2> pts = {{0, 0}, {3, 0}, {4, 2}, {4, 6}, {2, 7}, {0, 7}, {-2, 5}, {-1, 1}};
    const ClosedContour c(pts);
    const auto s = sample_segment_uniform(c, 2, 9, SampleSpacing::ArcLength);
    std::vector<double> gaps;
    for (std::size_t k = 1; k < s.size(); ++k) {
        gaps.push_back(distance(s[k - 1], s[k]));
    }
    const auto [lo, hi] = std::minmax_element(gaps.begin(), gaps.end());
    EXPECT_LT(*hi - *lo, 1e-3 * *hi);
}

TEST(ArcLengthTest, DegenerateContourHasZeroLength) {
    const ClosedContour c(std::vector<Vec2>(4, Vec2{2.0, -1.0}));
    EXPECT_EQ(segment_arc_length(c, 0), 0.0);
}

TEST(ArcLengthTest, StraightSegment) {
    const ClosedContour c = with_straight_segment(2.5);
    EXPECT_NEAR(segment_arc_length(c, 1), 2.5, 1e-9);
}

TEST(ArcLengthTest, OctagonMatchesDenseChordSum) {
    const ClosedContour c = octagon();
    const auto pts = oracle::regular_polygon(8, 1.0);
    const double reference = oracle::chord_length(pts, 0, 1'000'000);
    EXPECT_NEAR(segment_arc_length(c, 0) / reference, 1.0, 1e-6);
}

TEST(ToleranceTest, ProductOfQAndSigma) {
    EXPECT_EQ(segment_tolerance(octagon(0.0, 2.0), 3), 0.0);
    EXPECT_NEAR(segment_tolerance(octagon(0.2, 3.0), 3), 0.6, 1e-15);
}

TEST(ToleranceTest, CoversGaussianOffsets) {
    // N(0, 0.1^2) offsets of a synthesized polyline stay within zeta = 0.3 for
    // ~99.7% of draws
    const ClosedContour c = octagon(0.1, 3.0);
    const double zeta = segment_tolerance(c, 0);
    const auto smooth = sample_segment_uniform(c, 0, 10'000);
    const auto rough = synthesize_rough_polyline(c, 0, 10'000, 2024);
    int within = 0;
    for (std::size_t k = 0; k < rough.size(); ++k) {
        within += distance(rough[k], smooth[k]) <= zeta ? 1 : 0;
    }
    EXPECT_GE(within, 9'900);
}

TEST(RoughPolylineTest, ZeroSigmaEqualsSmoothSamples) {
    const ClosedContour c = octagon(0.0);
    EXPECT_EQ(synthesize_rough_polyline(c, 1, 7, 3), sample_segment_uniform(c, 1, 7));
}

TEST(RoughPolylineTest, DeterministicForSeed) {
    const ClosedContour c = octagon(0.3);
    EXPECT_EQ(synthesize_rough_polyline(c, 1, 50, 99), synthesize_rough_polyline(c, 1, 50, 99));
    EXPECT_NE(synthesize_rough_polyline(c, 1, 50, 99), synthesize_rough_polyline(c, 1, 50, 100));
}

TEST(RoughPolylineTest, OffsetSpreadMatchesSigma) {
    const ClosedContour c = octagon(0.1);
    const int r = 10'000;
    const auto smooth = sample_segment_uniform(c, 4, r);
    const auto rough = synthesize_rough_polyline(c, 4, r, 77);
    double sum = 0.0, sum2 = 0.0;
    for (int k = 0; k < r; ++k) {
        const double t = static_cast<double>(k) / (r - 1);
        const double off = dot(rough[static_cast<std::size_t>(k)] - smooth[static_cast<std::size_t>(k)],
                               segment_normal(c, 4, t));
        sum += off;
        sum2 += off * off;
    }
    const double mean = sum / r;
    const double sd = std::sqrt((sum2 - r * mean * mean) / (r - 1));
    EXPECT_GE(sd, 0.095);
    EXPECT_LE(sd, 0.105);
}

TEST(RoughPolylineTest, OffsetsAreAlongTheNormal) {
    const ClosedContour c = octagon(0.2);
    const auto smooth = sample_segment_uniform(c, 6, 33);
    const auto rough = synthesize_rough_polyline(c, 6, 33, 5);
    for (int k = 0; k < 33; ++k) {
        const double t = k / 32.0;
        const Vec2 off = rough[static_cast<std::size_t>(k)] - smooth[static_cast<std::size_t>(k)];
        const Vec2 tangent = segment_derivative(c, 6, t);
        EXPECT_NEAR(dot(off, tangent) / norm(tangent), 0.0, 1e-12);
    }
}
