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

#include "obb2d/detect.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace obb2d {

bool boxes_overlap(const OrientedBox& a, const OrientedBox& b, double eps) {
    const Vec2 offset = b.center - a.center;
    const Vec2 candidates[4] = {a.axis1, a.axis2, b.axis1, b.axis2};
    for (const Vec2& axis : candidates) {
        const double ra = a.half_extent1 * std::abs(dot(a.axis1, axis)) +
                          a.half_extent2 * std::abs(dot(a.axis2, axis));
        const double rb = b.half_extent1 * std::abs(dot(b.axis1, axis)) +
                          b.half_extent2 * std::abs(dot(b.axis2, axis));
        if (std::abs(dot(offset, axis)) - (ra + rb) > eps) {
            return false;
        }
    }
    return true;
}

namespace {

struct Chord {
    Vec2 from;
    Vec2 to;
    Vec2 lo;
    Vec2 hi;
};

std::vector<Chord> world_chords(const ClosedContour& contour, int segment, const RigidPose& pose,
                                int samples) {
    const SegmentPolynomial poly = segment_polynomial(contour, segment);
    std::vector<Vec2> points;
    points.reserve(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) {
        const double t = samples > 1 ? static_cast<double>(k) / (samples - 1) : 0.0;
        points.push_back(pose.apply(poly(t)));
    }
    std::vector<Chord> chords;
    chords.reserve(points.size());
    for (std::size_t k = 0; k + 1 < points.size(); ++k) {
        const Vec2& p = points[k];
        const Vec2& q = points[k + 1];
        chords.push_back({p, q, {std::min(p.x, q.x), std::min(p.y, q.y)},
                          {std::max(p.x, q.x), std::max(p.y, q.y)}});
    }
    if (chords.empty()) {
        chords.push_back({points.front(), points.front(), points.front(), points.front()});
    }
    return chords;
}

Vec2 closest_on_chord(const Vec2& p, const Vec2& a, const Vec2& b) {
    const Vec2 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 <= 0.0) {
        return a;
    }
    const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
    return a + t * ab;
}

ClosestPair chord_distance(const Chord& u, const Chord& v) {
    const Vec2 du = u.to - u.from;
    const Vec2 dv = v.to - v.from;
    const double s1 = cross(du, v.from - u.from);
    const double s2 = cross(du, v.to - u.from);
    const double s3 = cross(dv, u.from - v.from);
    const double s4 = cross(dv, u.to - v.from);
    if (((s1 < 0.0 && s2 > 0.0) || (s1 > 0.0 && s2 < 0.0)) &&
        ((s3 < 0.0 && s4 > 0.0) || (s3 > 0.0 && s4 < 0.0))) {
        const Vec2 hit = v.from + (s1 / (s1 - s2)) * dv;
        return {hit, hit, 0.0};
    }
    ClosestPair best{u.from, closest_on_chord(u.from, v.from, v.to), 0.0};
    best.distance = distance(best.point_a, best.point_b);
    auto consider = [&](const Vec2& pa, const Vec2& pb) {
        const double d = distance(pa, pb);
        if (d < best.distance) {
            best = {pa, pb, d};
        }
    };
    consider(u.to, closest_on_chord(u.to, v.from, v.to));
    consider(closest_on_chord(v.from, u.from, u.to), v.from);
    consider(closest_on_chord(v.to, u.from, u.to), v.to);
    return best;
}

double box_gap(const Chord& u, const Chord& v) {
    const double gx = std::max({0.0, v.lo.x - u.hi.x, u.lo.x - v.hi.x});
    const double gy = std::max({0.0, v.lo.y - u.hi.y, u.lo.y - v.hi.y});
    return std::hypot(gx, gy);
}

} // namespace

ClosestPair segment_distance(const ClosedContour& contour_a, int segment_a, const RigidPose& pose_a,
                             const ClosedContour& contour_b, int segment_b, const RigidPose& pose_b,
                             int samples) {
    if (samples < 2) {
        throw std::domain_error("narrow phase needs at least 2 samples per segment");
    }
    const std::vector<Chord> chords_a = world_chords(contour_a, segment_a, pose_a, samples);
    const std::vector<Chord> chords_b = world_chords(contour_b, segment_b, pose_b, samples);
    ClosestPair best{{}, {}, std::numeric_limits<double>::infinity()};
    for (const Chord& u : chords_a) {
        for (const Chord& v : chords_b) {
            if (box_gap(u, v) >= best.distance) {
                continue;
            }
            const ClosestPair candidate = chord_distance(u, v);
            if (candidate.distance < best.distance) {
                best = candidate;
                if (best.distance == 0.0) {
                    return best;
                }
            }
        }
    }
    return best;
}

std::optional<Contact> narrow_phase(const ClosedContour& contour_a, int segment_a,
                                    const RigidPose& pose_a, const ClosedContour& contour_b,
                                    int segment_b, const RigidPose& pose_b,
                                    const DetectOptions& options) {
    const ClosestPair closest = segment_distance(contour_a, segment_a, pose_a, contour_b, segment_b,
                                                 pose_b, options.narrow_samples);
    const double reach = segment_tolerance(contour_a, segment_a) +
                         segment_tolerance(contour_b, segment_b) + options.eps_contact;
    if (closest.distance > reach) {
        return std::nullopt;
    }
    return Contact{segment_a, segment_b, closest.point_a, closest.point_b, closest.distance};
}

std::string_view to_string(InterferenceStatus status) {
    switch (status) {
    case InterferenceStatus::Separate:
        return "separate";
    case InterferenceStatus::Candidate:
        return "candidate";
    case InterferenceStatus::Interfering:
        return "interfering";
    }
    return "unknown";
}

namespace {

class DualTraversal {
public:
    DualTraversal(const BoxTree& a, const RigidPose& pose_a, const BoxTree& b,
                  const RigidPose& pose_b, double slack, InterferenceReport& report)
        : a_(a), b_(b), pose_a_(pose_a), pose_b_(pose_b), slack_(slack), report_(report) {}

    void visit(std::size_t ia, std::size_t ib) {
        ++report_.boxes_tested;
        const OrientedBox box_a = world_box(a_, ia, pose_a_);
        const OrientedBox box_b = world_box(b_, ib, pose_b_);
        if (!boxes_overlap(box_a, box_b, slack_)) {
            return;
        }
        const bool leaf_a = a_.is_leaf(ia);
        const bool leaf_b = b_.is_leaf(ib);
        if (leaf_a && leaf_b) {
            report_.candidate_pairs.emplace_back(box_a.leaf_range[0], box_b.leaf_range[0]);
            return;
        }
        if (leaf_b || (!leaf_a && box_a.area() >= box_b.area())) {
            visit(2 * ia + 1, ib);
            visit(2 * ia + 2, ib);
        } else {
            visit(ia, 2 * ib + 1);
            visit(ia, 2 * ib + 2);
        }
    }

private:
    const BoxTree& a_;
    const BoxTree& b_;
    const RigidPose& pose_a_;
    const RigidPose& pose_b_;
    double slack_;
    InterferenceReport& report_;
};

void update_status(InterferenceReport& report) {
    if (!report.contacts.empty()) {
        report.status = InterferenceStatus::Interfering;
    } else if (!report.candidate_pairs.empty()) {
        report.status = InterferenceStatus::Candidate;
    } else {
        report.status = InterferenceStatus::Separate;
    }
}

} // namespace

InterferenceReport traverse(const BoxTree& tree_a, const RigidPose& pose_a, const BoxTree& tree_b,
                            const RigidPose& pose_b, const DetectOptions& options) {
    InterferenceReport report;
    DualTraversal(tree_a, pose_a, tree_b, pose_b, options.traversal_slack(), report).visit(0, 0);
    update_status(report);
    return report;
}

InterferenceReport detect_pair(const BoxTree& tree_a, const ClosedContour& contour_a,
                               const RigidPose& pose_a, const BoxTree& tree_b,
                               const ClosedContour& contour_b, const RigidPose& pose_b,
                               const DetectOptions& options) {
    if (tree_a.leaf_count() != contour_a.segment_count() ||
        tree_b.leaf_count() != contour_b.segment_count()) {
        throw std::invalid_argument("box tree does not match its contour");
    }
    InterferenceReport report = traverse(tree_a, pose_a, tree_b, pose_b, options);
    for (const auto& [sa, sb] : report.candidate_pairs) {
        if (auto contact = narrow_phase(contour_a, sa, pose_a, contour_b, sb, pose_b, options)) {
            report.contacts.push_back(*contact);
        }
    }
    update_status(report);
    return report;
}

std::vector<InterferenceReport> detect_scene(std::span<const SceneObject> objects,
                                             const DetectOptions& options) {
    if (objects.size() < 2) {
        throw std::invalid_argument("a scene needs at least two objects");
    }
    std::vector<InterferenceReport> reports;
    reports.reserve(objects.size() * (objects.size() - 1) / 2);
    for (std::size_t a = 0; a < objects.size(); ++a) {
        for (std::size_t b = a + 1; b < objects.size(); ++b) {
            const SceneObject& oa = objects[a];
            const SceneObject& ob = objects[b];
            InterferenceReport report =
                detect_pair(*oa.tree, *oa.contour, oa.pose, *ob.tree, *ob.contour, ob.pose, options);
            report.object_a = static_cast<int>(a);
            report.object_b = static_cast<int>(b);
            reports.push_back(std::move(report));
        }
    }
    return reports;
}

} // namespace obb2d
