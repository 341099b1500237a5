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

#ifndef OBB2D_BOXTREE_HPP
#define OBB2D_BOXTREE_HPP

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "obb2d/obbfit.hpp"

namespace obb2d {

enum class AdaptationMethod {
    Elementary,      ///< super box axes from length-weighted elementary centroids
    Multiresolution, ///< super box axes from the coarse contour segment
};

std::string_view to_string(AdaptationMethod method);
/// Accepts "elementary" and "multires" / "multiresolution".
std::optional<AdaptationMethod> parse_method(std::string_view text);

/// Rotation about the origin followed by a translation.
class RigidPose {
public:
    RigidPose() = default;
    RigidPose(double angle, Vec2 translation);

    static RigidPose identity() { return {}; }

    double angle() const { return angle_; }
    const Vec2& translation() const { return translation_; }

    Vec2 rotate(const Vec2& v) const { return {cos_ * v.x - sin_ * v.y, sin_ * v.x + cos_ * v.y}; }
    Vec2 apply(const Vec2& p) const { return rotate(p) + translation_; }

    /// this ∘ other: applies `other` first.
    RigidPose compose(const RigidPose& other) const;

private:
    double angle_ = 0.0;
    double cos_ = 1.0;
    double sin_ = 0.0;
    Vec2 translation_;
};

/// Complete binary tree of oriented boxes over one contour, stored in the
/// contour's body frame. Node (j, i) lives at heap index 2^j - 1 + i; its
/// children are (j+1, 2i) and (j+1, 2i+1). Leaves (level n) are the
/// elementary boxes, the root (index 0) bounds the whole contour.
class BoxTree {
public:
    static std::size_t node_index(SegmentId node) {
        return (std::size_t{1} << node.level) - 1 + static_cast<std::size_t>(node.index);
    }

    AdaptationMethod method() const { return method_; }
    int leaf_level() const { return leaf_level_; }
    std::size_t leaf_count() const { return std::size_t{1} << leaf_level_; }
    std::size_t node_count() const { return nodes_.size(); }

    std::span<const OrientedBox> nodes() const { return nodes_; }
    const OrientedBox& node(std::size_t index) const { return nodes_.at(index); }
    const OrientedBox& node(SegmentId id) const { return nodes_.at(node_index(id)); }
    const OrientedBox& leaf(int segment) const {
        return node(SegmentId{leaf_level_, segment});
    }

    bool is_leaf(std::size_t index) const { return index + 1 >= leaf_count(); }
    int level_of(std::size_t index) const;

    std::span<const OrientedBox> level(int j) const;

private:
    friend BoxTree build_tree(const ClosedContour&, const ContourPyramid*, AdaptationMethod,
                              const ElementaryFitOptions&);

    AdaptationMethod method_ = AdaptationMethod::Elementary;
    int leaf_level_ = 0;
    std::vector<OrientedBox> nodes_;
};

/// Builds the 2m - 1 node tree. Multiresolution needs `pyramid` built from
/// the same contour; levels coarser than its min_level use the elementary
/// adaptation. Throws std::domain_error on a missing or mismatched pyramid.
BoxTree build_tree(const ClosedContour& contour, const ContourPyramid* pyramid,
                   AdaptationMethod method, const ElementaryFitOptions& options = {});

/// Builds the pyramid itself when the method needs one.
BoxTree build_tree(const ClosedContour& contour, AdaptationMethod method,
                   const ElementaryFitOptions& options = {});

/// Sum of box areas over level j, or over every node when level is empty.
double total_box_area(const BoxTree& tree, std::optional<int> level = std::nullopt);

OrientedBox transform_box(const OrientedBox& box, const RigidPose& pose);

/// Node `index` placed in the world by `pose`.
OrientedBox world_box(const BoxTree& tree, std::size_t index, const RigidPose& pose);

} // namespace obb2d

#endif // OBB2D_BOXTREE_HPP
