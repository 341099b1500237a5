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

#include "obb2d/io.hpp"

#include <fstream>

namespace obb2d {

using nlohmann::json;

namespace {

json point_json(const Vec2& p) { return json::array({p.x, p.y}); }

Vec2 point_from(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError("expected a point [x, y], got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

} // namespace

json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

ClosedContour contour_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("control_points")) {
        throw InputError("contour document needs a \"control_points\" array");
    }
    const json& pts = doc.at("control_points");
    if (!pts.is_array()) {
        throw InputError("\"control_points\" must be an array");
    }
    std::vector<Vec2> points;
    points.reserve(pts.size());
    for (const json& p : pts) {
        points.push_back(point_from(p));
    }
    std::vector<double> sigma(points.size(), 0.0);
    if (doc.contains("sigma")) {
        const json& s = doc.at("sigma");
        if (!s.is_array()) {
            throw InputError("\"sigma\" must be an array");
        }
        sigma.clear();
        for (const json& v : s) {
            if (!v.is_number()) {
                throw InputError("\"sigma\" entries must be numbers");
            }
            sigma.push_back(v.get<double>());
        }
    }
    double q_factor = ClosedContour::kDefaultQFactor;
    if (doc.contains("q_factor")) {
        if (!doc.at("q_factor").is_number()) {
            throw InputError("\"q_factor\" must be a number");
        }
        q_factor = doc.at("q_factor").get<double>();
    }
    try {
        return ClosedContour(std::move(points), std::move(sigma), q_factor);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

json contour_to_json(const ClosedContour& contour) {
    json pts = json::array();
    for (const Vec2& p : contour.control_points()) {
        pts.push_back(point_json(p));
    }
    json sigma = json::array();
    for (double s : contour.sigma()) {
        sigma.push_back(s);
    }
    return {{"control_points", std::move(pts)}, {"sigma", std::move(sigma)},
            {"q_factor", contour.q_factor()}};
}

ClosedContour load_contour(const std::filesystem::path& path) {
    try {
        return contour_from_json(read_json_file(path));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

json pose_to_json(const RigidPose& pose) {
    return {{"angle", pose.angle()}, {"translation", point_json(pose.translation())}};
}

RigidPose pose_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw InputError("pose must be an object");
    }
    double angle = 0.0;
    Vec2 translation;
    if (doc.contains("angle")) {
        if (!doc.at("angle").is_number()) {
            throw InputError("pose \"angle\" must be a number");
        }
        angle = doc.at("angle").get<double>();
    }
    if (doc.contains("translation")) {
        translation = point_from(doc.at("translation"));
    }
    return RigidPose(angle, translation);
}

json box_to_json(const OrientedBox& box) {
    return {{"center", point_json(box.center)},
            {"axis1", point_json(box.axis1)},
            {"axis2", point_json(box.axis2)},
            {"half_extents", json::array({box.half_extent1, box.half_extent2})},
            {"tolerance", box.tolerance},
            {"segment_length", box.segment_length},
            {"leaf_range", json::array({box.leaf_range[0], box.leaf_range[1]})}};
}

json tree_to_json(const BoxTree& tree) {
    json nodes = json::array();
    for (std::size_t k = 0; k < tree.node_count(); ++k) {
        json node = box_to_json(tree.node(k));
        node["index"] = k;
        node["level"] = tree.level_of(k);
        nodes.push_back(std::move(node));
    }
    return {{"method", std::string(to_string(tree.method()))},
            {"leaf_level", tree.leaf_level()},
            {"node_count", tree.node_count()},
            {"nodes", std::move(nodes)}};
}

json pyramid_to_json(const ContourPyramid& pyramid) {
    json levels = json::array();
    for (int j = pyramid.min_level(); j <= pyramid.max_level(); ++j) {
        json polygon = json::array();
        for (const Vec2& p : pyramid.level(j)) {
            polygon.push_back(point_json(p));
        }
        levels.push_back(std::move(polygon));
    }
    return levels;
}

json report_to_json(const InterferenceReport& report) {
    json candidates = json::array();
    for (const auto& [a, b] : report.candidate_pairs) {
        candidates.push_back(json::array({a, b}));
    }
    json contacts = json::array();
    for (const Contact& c : report.contacts) {
        contacts.push_back({{"segments", json::array({c.segment_a, c.segment_b})},
                            {"point_a", point_json(c.point_a)},
                            {"point_b", point_json(c.point_b)},
                            {"distance", c.distance}});
    }
    return {{"objects", json::array({report.object_a, report.object_b})},
            {"status", std::string(to_string(report.status))},
            {"boxes_tested", report.boxes_tested},
            {"candidates", std::move(candidates)},
            {"contacts", std::move(contacts)}};
}

} // namespace obb2d
