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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>

#include "obb2d/detect.hpp"
#include "obb2d/harness.hpp"
#include "oracles.hpp"

using namespace obb2d;

namespace {

OrientedBox make_box(Vec2 center, double angle, double e1, double e2) {
    OrientedBox b;
    b.center = center;
    b.axis1 = {std::cos(angle), std::sin(angle)};
    b.axis2 = perp(b.axis1);
    b.half_extent1 = e1;
    b.half_extent2 = e2;
    return b;
}

/// Closed contour whose segment 1 is the straight piece start -> start + dir;
/// the rest of the loop lies far off to one side.
ClosedContour straight_piece(Vec2 start, Vec2 dir, double sigma = 0.0) {
    const Vec2 side = perp(dir);
    std::vector<Vec2> pts = {start - dir, start, start + dir, start + 2.0 * dir,
                             start + 2.0 * dir + 40.0 * side, start + 40.0 * side,
                             start - dir + 40.0 * side, start - 2.0 * dir + 20.0 * side};
    return ClosedContour(pts, std::vector<double>(8, sigma), 3.0);
}

std::vector<Vec2> points_of(const ClosedContour& c) {
    return {c.control_points().begin(), c.control_points().end()};
}

std::set<std::pair<int, int>> pair_set(const std::vector<Contact>& contacts) {
    std::set<std::pair<int, int>> s;
    for (const Contact& c : contacts) {
        s.insert({c.segment_a, c.segment_b});
    }
    return s;
}

} // namespace

TEST(BoxesOverlapTest, Examples) {
    const OrientedBox a = make_box({0, 0}, 0.0, 1, 1);
    EXPECT_FALSE(boxes_overlap(a, make_box({3, 0}, 0.0, 1, 1)));
    EXPECT_TRUE(boxes_overlap(a, make_box({1.5, 0}, 0.0, 1, 1)));
    EXPECT_TRUE(boxes_overlap(a, make_box({2, 0}, 0.0, 1, 1)));

    const OrientedBox r = make_box({0, 0}, std::numbers::pi / 4, 1.0, 0.5);
    const OrientedBox b = make_box({1.6, 0}, 0.0, 0.5, 0.5);
    EXPECT_EQ(boxes_overlap(r, b), oracle::box_pair_truth(r, b).intersect);
}

TEST(BoxesOverlapTest, AgreesWithClippingOracle) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> pos(-4.0, 4.0);
    std::uniform_real_distribution<double> ext(0.05, 2.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * std::numbers::pi);
    int compared = 0;
    for (int trial = 0; trial < 10'000; ++trial) {
        const OrientedBox a = make_box({pos(rng), pos(rng)}, ang(rng), ext(rng), ext(rng));
        const OrientedBox b = make_box({pos(rng), pos(rng)}, ang(rng), ext(rng), ext(rng));
        const auto truth = oracle::box_pair_truth(a, b);
        if (truth.margin < 1e-9) {
            continue;
        }
        ++compared;
        EXPECT_EQ(boxes_overlap(a, b), truth.intersect) << "trial " << trial;
        EXPECT_EQ(boxes_overlap(b, a), truth.intersect) << "trial " << trial;
    }
    EXPECT_GT(compared, 9'900);
}

TEST(TraverseTest, DisjointRootsCostOneTest) {
    const ClosedContour c = generate_fixture(FixtureKind::Blob, 64, 0.0, 1);
    const BoxTree t = build_tree(c, AdaptationMethod::Multiresolution);
    const InterferenceReport r = traverse(t, RigidPose(), t, RigidPose(0.0, {1000.0, 0.0}));
    EXPECT_EQ(r.boxes_tested, 1u);
    EXPECT_TRUE(r.candidate_pairs.empty());
    EXPECT_EQ(r.status, InterferenceStatus::Separate);
}

TEST(TraverseTest, SelfPairsEveryLeafWithItself) {
    const ClosedContour c = generate_fixture(FixtureKind::Gear, 64, 0.0, 4);
    for (const auto method : {AdaptationMethod::Elementary, AdaptationMethod::Multiresolution}) {
        const BoxTree t = build_tree(c, method);
        const RigidPose pose(0.4, {3.0, 1.0});
        const InterferenceReport r = traverse(t, pose, t, pose);
        const std::set<std::pair<int, int>> found(r.candidate_pairs.begin(), r.candidate_pairs.end());
        for (int i = 0; i < 64; ++i) {
            EXPECT_TRUE(found.count({i, i})) << i;
        }
        EXPECT_LE(r.boxes_tested, 127u * 127u);
    }
}

TEST(TraverseTest, CandidatesCoverOracleContacts) {
    const ClosedContour a = generate_fixture(FixtureKind::Blob, 64, 0.0, 21);
    const ClosedContour b = generate_fixture(FixtureKind::Star, 64, 0.0, 22);
    const RigidPose pa;
    const RigidPose pb(0.3, {170.0, 10.0});
    const auto truth = all_pairs_contacts(a, pa, b, pb);
    ASSERT_FALSE(truth.empty());
    for (const auto method : {AdaptationMethod::Elementary, AdaptationMethod::Multiresolution}) {
        const InterferenceReport r = traverse(build_tree(a, method), pa, build_tree(b, method), pb);
        const std::set<std::pair<int, int>> cand(r.candidate_pairs.begin(), r.candidate_pairs.end());
        for (const Contact& c : truth) {
            EXPECT_TRUE(cand.count({c.segment_a, c.segment_b}));
        }
    }
}

TEST(TraverseTest, NoFalseNegativesOnRandomScenes) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const FixtureKind kinds[] = {FixtureKind::Blob, FixtureKind::Gear, FixtureKind::Star};
    const int sizes[] = {8, 16, 32, 64};
    int with_contacts = 0;
    for (int scene = 0; scene < 100; ++scene) {
        std::vector<ClosedContour> contours;
        std::vector<RigidPose> poses;
        const int count = 2 + static_cast<int>(u(rng) * 2.0);
        for (int k = 0; k < count; ++k) {
            contours.push_back(generate_fixture(kinds[static_cast<int>(u(rng) * 3.0)],
                                                sizes[static_cast<int>(u(rng) * 4.0)], 0.5 * u(rng), rng(),
                                                10.0 + 10.0 * u(rng)));
            poses.emplace_back(2.0 * std::numbers::pi * u(rng), Vec2{30.0 * u(rng), 30.0 * u(rng)});
        }
        for (int a = 0; a < count; ++a) {
            for (int b = a + 1; b < count; ++b) {
                const auto truth = pair_set(all_pairs_contacts(contours[static_cast<std::size_t>(a)],
                                                               poses[static_cast<std::size_t>(a)],
                                                               contours[static_cast<std::size_t>(b)],
                                                               poses[static_cast<std::size_t>(b)]));
                with_contacts += truth.empty() ? 0 : 1;
                for (const auto method : {AdaptationMethod::Elementary, AdaptationMethod::Multiresolution}) {
                    const BoxTree ta = build_tree(contours[static_cast<std::size_t>(a)], method);
                    const BoxTree tb = build_tree(contours[static_cast<std::size_t>(b)], method);
                    const InterferenceReport r =
                        detect_pair(ta, contours[static_cast<std::size_t>(a)], poses[static_cast<std::size_t>(a)],
                                    tb, contours[static_cast<std::size_t>(b)], poses[static_cast<std::size_t>(b)]);
                    EXPECT_EQ(pair_set(r.contacts), truth) << "scene " << scene;
                }
            }
        }
    }
    EXPECT_GT(with_contacts, 20);
}

TEST(NarrowPhaseTest, CrossingSegments) {
    const ClosedContour a = straight_piece({-1.5, 0.0}, {3.0, 0.0});
    const ClosedContour b = straight_piece({0.0, -1.5}, {0.0, 3.0});
    const auto contact = narrow_phase(a, 1, RigidPose(), b, 1, RigidPose());
    ASSERT_TRUE(contact.has_value());
    EXPECT_NEAR(contact->distance, 0.0, 1e-12);
}

TEST(NarrowPhaseTest, ParallelGapAndTolerance) {
    const ClosedContour a = straight_piece({0.0, 0.0}, {1.0, 0.0});
    const ClosedContour b = straight_piece({0.0, 1.0}, {1.0, 0.0});
    EXPECT_FALSE(narrow_phase(a, 1, RigidPose(), b, 1, RigidPose()).has_value());
    const ClosestPair d = segment_distance(a, 1, RigidPose(), b, 1, RigidPose());
    EXPECT_NEAR(d.distance, 1.0, 1e-12);

    std::vector<double> sa(8, 0.2), sb(8, 0.5 / 3.0);
    const ClosedContour ra(points_of(a), sa, 3.0);
    const ClosedContour rb(points_of(b), sb, 3.0);
    const auto contact = narrow_phase(ra, 1, RigidPose(), rb, 1, RigidPose());
    ASSERT_TRUE(contact.has_value());
    EXPECT_NEAR(contact->distance, 1.0, 1e-12);
}

TEST(NarrowPhaseTest, LargerToleranceKeepsContacts) {
    const ClosedContour a = generate_fixture(FixtureKind::Gear, 32, 0.0, 5, 20.0);
    const ClosedContour b = generate_fixture(FixtureKind::Blob, 32, 0.0, 6, 20.0);
    const RigidPose pa;
    const RigidPose pb(0.7, {39.0, 3.0});
    std::set<std::pair<int, int>> previous;
    for (double sigma : {0.0, 0.05, 0.2, 0.5, 1.0}) {
        const ClosedContour ra(points_of(a), std::vector<double>(32, sigma), 3.0);
        const ClosedContour rb(points_of(b), std::vector<double>(32, sigma), 3.0);
        const auto now = pair_set(all_pairs_contacts(ra, pa, rb, pb));
        EXPECT_TRUE(std::includes(now.begin(), now.end(), previous.begin(), previous.end()));
        previous = now;
    }
    EXPECT_FALSE(previous.empty());
}

TEST(DetectPairTest, PoseInvariance) {
    const ClosedContour a = generate_fixture(FixtureKind::Star, 64, 0.1, 2, 30.0);
    const ClosedContour b = generate_fixture(FixtureKind::Gear, 64, 0.1, 3, 30.0);
    const BoxTree ta = build_tree(a, AdaptationMethod::Multiresolution);
    const BoxTree tb = build_tree(b, AdaptationMethod::Multiresolution);
    const RigidPose pa(0.2, {0.0, 0.0});
    const RigidPose pb(1.0, {55.0, 8.0});
    const RigidPose g(2.5, {-100.0, 40.0});
    const InterferenceReport r1 = detect_pair(ta, a, pa, tb, b, pb);
    const InterferenceReport r2 = detect_pair(ta, a, g.compose(pa), tb, b, g.compose(pb));
    ASSERT_FALSE(r1.contacts.empty());
    EXPECT_EQ(r1.candidate_pairs, r2.candidate_pairs);
    ASSERT_EQ(r1.contacts.size(), r2.contacts.size());
    for (std::size_t k = 0; k < r1.contacts.size(); ++k) {
        EXPECT_NEAR(r1.contacts[k].distance, r2.contacts[k].distance, 1e-9);
    }
}

TEST(DetectPairTest, StatusInvariantsAndCounters) {
    const ClosedContour a = generate_fixture(FixtureKind::Blob, 32, 0.2, 8, 20.0);
    const ClosedContour b = generate_fixture(FixtureKind::Blob, 16, 0.2, 9, 20.0);
    const BoxTree ta = build_tree(a, AdaptationMethod::Elementary);
    const BoxTree tb = build_tree(b, AdaptationMethod::Elementary);
    for (double x : {0.0, 20.0, 38.0, 45.0, 60.0, 200.0}) {
        const InterferenceReport r = detect_pair(ta, a, RigidPose(), tb, b, RigidPose(0.0, {x, 0.0}));
        EXPECT_GE(r.boxes_tested, 1u);
        EXPECT_LE(r.boxes_tested, 63u * 31u);
        EXPECT_EQ(r.status == InterferenceStatus::Interfering, !r.contacts.empty());
        EXPECT_EQ(r.status == InterferenceStatus::Separate, r.candidate_pairs.empty());
        const std::set<std::pair<int, int>> cand(r.candidate_pairs.begin(), r.candidate_pairs.end());
        for (const Contact& c : r.contacts) {
            EXPECT_TRUE(cand.count({c.segment_a, c.segment_b}));
        }
    }
}

TEST(DetectPairTest, MismatchedTreeIsRejected) {
    const ClosedContour a = generate_fixture(FixtureKind::Blob, 32, 0.0, 1);
    const ClosedContour b = generate_fixture(FixtureKind::Blob, 16, 0.0, 2);
    const BoxTree ta = build_tree(a, AdaptationMethod::Elementary);
    EXPECT_THROW(detect_pair(ta, b, RigidPose(), ta, a, RigidPose()), std::invalid_argument);
}

TEST(DetectSceneTest, FarApartObjects) {
    std::vector<ClosedContour> contours;
    std::vector<BoxTree> trees;
    for (std::uint64_t s = 1; s <= 3; ++s) {
        contours.push_back(generate_fixture(FixtureKind::Blob, 64, 0.0, s));
    }
    for (const auto& c : contours) {
        trees.push_back(build_tree(c, AdaptationMethod::Multiresolution));
    }
    std::vector<SceneObject> objects;
    for (std::size_t k = 0; k < 3; ++k) {
        objects.push_back({&trees[k], &contours[k], RigidPose(0.0, {1000.0 * static_cast<double>(k), 0.0})});
    }
    const auto reports = detect_scene(objects);
    ASSERT_EQ(reports.size(), 3u);
    std::uint64_t tested = 0;
    for (const auto& r : reports) {
        tested += r.boxes_tested;
        EXPECT_EQ(r.status, InterferenceStatus::Separate);
    }
    EXPECT_EQ(tested, 3u);
    EXPECT_EQ(reports[1].object_a, 0);
    EXPECT_EQ(reports[1].object_b, 2);
    EXPECT_THROW(detect_scene(std::span<const SceneObject>(objects.data(), 1)), std::invalid_argument);
}
