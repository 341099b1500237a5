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

#include "obb2d/boxtree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace obb2d {

std::string_view to_string(AdaptationMethod method) {
    switch (method) {
    case AdaptationMethod::Elementary:
        return "elementary";
    case AdaptationMethod::Multiresolution:
        return "multires";
    }
    return "unknown";
}

std::optional<AdaptationMethod> parse_method(std::string_view text) {
    if (text == "elementary" || text == "elem") {
        return AdaptationMethod::Elementary;
    }
    if (text == "multires" || text == "multiresolution") {
        return AdaptationMethod::Multiresolution;
    }
    return std::nullopt;
}

RigidPose::RigidPose(double angle, Vec2 translation)
    : angle_(angle), cos_(std::cos(angle)), sin_(std::sin(angle)), translation_(translation) {}

RigidPose RigidPose::compose(const RigidPose& other) const {
    return RigidPose(angle_ + other.angle_, apply(other.translation_));
}

int BoxTree::level_of(std::size_t index) const {
    int level = 0;
    while ((std::size_t{2} << level) - 1 <= index) {
        ++level;
    }
    return level;
}

std::span<const OrientedBox> BoxTree::level(int j) const {
    if (j < 0 || j > leaf_level_) {
        throw std::domain_error("tree level out of range");
    }
    return std::span<const OrientedBox>(nodes_).subspan(node_index(SegmentId{j, 0}),
                                                        std::size_t{1} << j);
}

namespace {

bool same_polygon(std::span<const Vec2> a, std::span<const Vec2> b) {
    return std::equal(a.begin(), a.end(), b.begin(), b.end());
}

} // namespace

BoxTree build_tree(const ClosedContour& contour, const ContourPyramid* pyramid,
                   AdaptationMethod method, const ElementaryFitOptions& options) {
    if (method == AdaptationMethod::Multiresolution) {
        if (pyramid == nullptr) {
            throw std::domain_error("multiresolution adaptation needs a contour pyramid");
        }
        if (pyramid->max_level() != contour.level() ||
            !same_polygon(pyramid->base().control_points(), contour.control_points())) {
            throw std::domain_error("pyramid was not built from this contour");
        }
    }

    const int n = contour.level();
    const std::size_t m = contour.segment_count();
    BoxTree tree;
    tree.method_ = method;
    tree.leaf_level_ = n;
    tree.nodes_.resize(2 * m - 1);

    for (std::size_t i = 0; i < m; ++i) {
        tree.nodes_[m - 1 + i] = fit_elementary_box(contour, static_cast<int>(i), options);
    }

    const std::span<const OrientedBox> leaves(tree.nodes_.data() + (m - 1), m);
    for (int j = n - 1; j >= 0; --j) {
        for (int i = 0; i < (1 << j); ++i) {
            const SegmentId id{j, i};
            const std::size_t index = BoxTree::node_index(id);

            std::optional<Axes> axes;
            if (method == AdaptationMethod::Multiresolution) {
                axes = superbox_axes_multires(*pyramid, id, options);
            }
            if (!axes) {
                const auto [first, last] = leaf_descendants(id, n);
                axes = superbox_axes_elementary(
                    leaves.subspan(static_cast<std::size_t>(first), static_cast<std::size_t>(last - first)));
            }
            const std::span<const OrientedBox> children(tree.nodes_.data() + 2 * index + 1, 2);
            tree.nodes_[index] = fit_superbox(*axes, children);
        }
    }
    return tree;
}

BoxTree build_tree(const ClosedContour& contour, AdaptationMethod method,
                   const ElementaryFitOptions& options) {
    if (method == AdaptationMethod::Multiresolution) {
        const ContourPyramid pyramid = build_pyramid(contour);
        return build_tree(contour, &pyramid, method, options);
    }
    return build_tree(contour, nullptr, method, options);
}

double total_box_area(const BoxTree& tree, std::optional<int> level) {
    const std::span<const OrientedBox> boxes = level ? tree.level(*level) : tree.nodes();
    double area = 0.0;
    for (const OrientedBox& box : boxes) {
        area += box.area();
    }
    return area;
}

OrientedBox transform_box(const OrientedBox& box, const RigidPose& pose) {
    OrientedBox out = box;
    out.center = pose.apply(box.center);
    out.axis1 = pose.rotate(box.axis1);
    out.axis2 = pose.rotate(box.axis2);
    return out;
}

OrientedBox world_box(const BoxTree& tree, std::size_t index, const RigidPose& pose) {
    return transform_box(tree.node(index), pose);
}

} // namespace obb2d
