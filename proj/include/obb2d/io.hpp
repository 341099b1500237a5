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

#ifndef OBB2D_IO_HPP
#define OBB2D_IO_HPP

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "obb2d/boxtree.hpp"
#include "obb2d/detect.hpp"
#include "obb2d/multires.hpp"

namespace obb2d {

/// Malformed or unreadable input file.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

nlohmann::json read_json_file(const std::filesystem::path& path);

/// `{ "control_points": [[x, y], ...], "sigma": [...], "q_factor": 3.0 }`.
/// sigma and q_factor are optional (0 and 3.0). Throws InputError.
ClosedContour contour_from_json(const nlohmann::json& doc);
nlohmann::json contour_to_json(const ClosedContour& contour);
ClosedContour load_contour(const std::filesystem::path& path);

nlohmann::json pose_to_json(const RigidPose& pose);
/// `{ "angle": radians, "translation": [x, y] }`, both optional.
RigidPose pose_from_json(const nlohmann::json& doc);

nlohmann::json box_to_json(const OrientedBox& box);
nlohmann::json tree_to_json(const BoxTree& tree);
/// One control polygon per level, coarsest first.
nlohmann::json pyramid_to_json(const ContourPyramid& pyramid);
nlohmann::json report_to_json(const InterferenceReport& report);

} // namespace obb2d

#endif // OBB2D_IO_HPP
