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

#ifndef OBB2D_DETECT_HPP
#define OBB2D_DETECT_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "obb2d/boxtree.hpp"

namespace obb2d {

struct DetectOptions {
    /// Projection gap tolerated before two boxes count as separated.
    double eps_sep = 1e-12;
    /// Slack added to zeta_A + zeta_B when declaring contact.
    double eps_contact = 1e-9;
    /// Points per segment in the narrow-phase polyline.
    int narrow_samples = 64;

    /// Slack used by the tree traversal. It must cover eps_contact, otherwise
    /// a contact within eps_contact of touching could be pruned.
    double traversal_slack() const { return eps_sep + eps_contact; }
};

/// Separating-axis test over the four box edge directions. Boxes whose
/// projections are apart by at most `eps` on every axis overlap, so
/// touching boxes overlap.
bool boxes_overlap(const OrientedBox& a, const OrientedBox& b, double eps = 1e-12);

struct ClosestPair {
    Vec2 point_a;
    Vec2 point_b;
    double distance = 0.0;
};

/// Minimum distance between two world-placed smooth segments, each
/// discretised into `samples` points.
ClosestPair segment_distance(const ClosedContour& contour_a, int segment_a, const RigidPose& pose_a,
                             const ClosedContour& contour_b, int segment_b, const RigidPose& pose_b,
                             int samples = 64);

struct Contact {
    int segment_a = 0;
    int segment_b = 0;
    Vec2 point_a;
    Vec2 point_b;
    double distance = 0.0;
};

/// Contact when the segments come within zeta_A + zeta_B + eps_contact.
std::optional<Contact> narrow_phase(const ClosedContour& contour_a, int segment_a,
                                    const RigidPose& pose_a, const ClosedContour& contour_b,
                                    int segment_b, const RigidPose& pose_b,
                                    const DetectOptions& options = {});

enum class InterferenceStatus {
    Separate,    ///< no leaf pair survived the broad phase
    Candidate,   ///< leaf boxes overlap but no segment pair is in contact
    Interfering, ///< at least one confirmed contact
};

std::string_view to_string(InterferenceStatus status);

struct InterferenceReport {
    int object_a = 0;
    int object_b = 1;
    /// Number of box-pair overlap tests executed.
    std::uint64_t boxes_tested = 0;
    std::vector<std::pair<int, int>> candidate_pairs;
    std::vector<Contact> contacts;
    InterferenceStatus status = InterferenceStatus::Separate;
};

/// Broad phase: simultaneous descent of both trees from the roots. Disjoint
/// pairs are pruned; otherwise the larger-area internal node is split and its
/// children are visited in index order. Leaf-leaf overlaps become candidates.
InterferenceReport traverse(const BoxTree& tree_a, const RigidPose& pose_a, const BoxTree& tree_b,
                            const RigidPose& pose_b, const DetectOptions& options = {});

/// Broad phase followed by the narrow phase on every candidate pair.
InterferenceReport detect_pair(const BoxTree& tree_a, const ClosedContour& contour_a,
                               const RigidPose& pose_a, const BoxTree& tree_b,
                               const ClosedContour& contour_b, const RigidPose& pose_b,
                               const DetectOptions& options = {});

struct SceneObject {
    const BoxTree* tree = nullptr;
    const ClosedContour* contour = nullptr;
    RigidPose pose;
};

/// One report per unordered object pair (a < b), in lexicographic order.
/// Throws std::invalid_argument with fewer than two objects.
std::vector<InterferenceReport> detect_scene(std::span<const SceneObject> objects,
                                             const DetectOptions& options = {});

} // namespace obb2d

#endif // OBB2D_DETECT_HPP
