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

#ifndef OBB2D_HARNESS_HPP
#define OBB2D_HARNESS_HPP

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "obb2d/detect.hpp"
#include "obb2d/io.hpp"

namespace obb2d {

enum class FixtureKind { Blob, Gear, Star };

std::optional<FixtureKind> parse_fixture_kind(std::string_view text);
std::string_view to_string(FixtureKind kind);

/// Smooth closed control polygon of m points placed on a radially perturbed
/// circle (low harmonics for blobs, rounded teeth for gears, lobes for
/// stars), centred at the origin, counter-clockwise, uniform sigma =
/// roughness. Deterministic in (kind, m, roughness, seed, radius). Throws
/// std::invalid_argument unless m is a power of two >= 8.
ClosedContour generate_fixture(FixtureKind kind, int m, double roughness, std::uint64_t seed,
                               double radius = 100.0);

struct SceneEntry {
    std::string source; ///< file name or fixture description
    ClosedContour contour;
    RigidPose pose;
    /// Per-frame poses; empty means the object stays at `pose`.
    std::vector<RigidPose> frames;
};

/// Objects with initial poses plus an optional prescribed motion.
///
/// JSON layout:
/// ```
/// { "name": "...", "seed": 1,
///   "objects": [
///     { "contour": "file.json" | "fixture": {"kind": "gear", "m": 512,
///                                           "roughness": 0.0, "seed": 3,
///                                           "radius": 100.0},
///       "pose": {"angle": 0.0, "translation": [x, y]},
///       "frames": [ {pose}, ... ] } ] }
/// ```
/// Contour paths are relative to the scene file.
struct Scene {
    std::string name;
    std::uint64_t seed = 0;
    std::vector<SceneEntry> objects;

    /// Number of animation frames (0 for a static scene).
    std::size_t frame_count() const;
    std::size_t segment_count() const;
    /// Sum of 2m - 1 over the objects.
    std::size_t boxes_total() const;
};

/// Throws InputError on malformed documents or unequal frame lists.
Scene scene_from_json(const nlohmann::json& doc,
                      const std::filesystem::path& base_dir = std::filesystem::path("."));
Scene load_scene(const std::filesystem::path& path);

/// Trees for every object of a scene, built with one method.
struct BuiltScene {
    AdaptationMethod method = AdaptationMethod::Elementary;
    std::vector<BoxTree> trees;

    std::vector<SceneObject> objects(const Scene& scene) const;
    std::vector<SceneObject> objects_at_frame(const Scene& scene, std::size_t frame) const;
};

BuiltScene build_scene(const Scene& scene, AdaptationMethod method,
                       const ElementaryFitOptions& fit = {});

struct ExperimentRecord {
    std::string scene;
    AdaptationMethod method = AdaptationMethod::Elementary;
    std::size_t frame = 0;
    std::size_t objects = 0;
    std::size_t segments = 0;
    std::size_t boxes_total = 0;
    std::uint64_t boxes_tested = 0;
    std::size_t candidates = 0;
    std::size_t contacts = 0;
    /// Total box area per tree level j, summed over objects.
    std::vector<double> area_by_level;
    /// Minimum detection time over the repetitions, build excluded.
    double wall_time_s = 0.0;
};

/// Summarises one detection pass.
ExperimentRecord summarize(const Scene& scene, const BuiltScene& built, std::size_t frame,
                           const std::vector<InterferenceReport>& reports);

struct ExperimentResult {
    ExperimentRecord record;
    std::vector<InterferenceReport> reports;
};

/// Builds the trees, then runs the scene's detection `repeats` times and
/// keeps the minimum wall time.
ExperimentResult run_experiment(const Scene& scene, AdaptationMethod method, int repeats = 5,
                                const DetectOptions& options = {},
                                const ElementaryFitOptions& fit = {});

/// Brute force: narrow phase on every segment pair of every object pair.
std::vector<Contact> all_pairs_contacts(const ClosedContour& contour_a, const RigidPose& pose_a,
                                        const ClosedContour& contour_b, const RigidPose& pose_b,
                                        const DetectOptions& options = {});

struct OracleMismatch {
    int object_a = 0;
    int object_b = 0;
    int segment_a = 0;
    int segment_b = 0;
};

struct OracleResult {
    bool pass = true;
    std::size_t tree_contacts = 0;
    std::size_t oracle_contacts = 0;
    /// Oracle contacts the tree-based detection missed.
    std::vector<OracleMismatch> missing;
};

/// Upper bound on segments per object for the O(n^2) oracle.
inline constexpr std::size_t kOracleMaxSegments = 64;

/// Compares tree-based contacts to the all-pairs oracle at the initial poses
/// (and every frame of an animated scene). Throws InputError when an object
/// has more than kOracleMaxSegments segments.
OracleResult run_oracle_check(const Scene& scene,
                              AdaptationMethod method = AdaptationMethod::Multiresolution,
                              const DetectOptions& options = {});

/// One record per frame; `sink` is called as each frame completes.
std::vector<ExperimentRecord> animate(const Scene& scene, AdaptationMethod method,
                                      const DetectOptions& options = {},
                                      const std::function<void(const ExperimentRecord&)>& sink = {});

/// Fixed-order CSV with '.' decimals. The wall-time column is always last.
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const ExperimentRecord& record);

/// Applies OBB2D_EPS: "x" sets both eps_sep and eps_contact, "x,y" sets them
/// separately. Throws InputError on a malformed value.
DetectOptions detect_options_from_env(DetectOptions options = {});

} // namespace obb2d

#endif // OBB2D_HARNESS_HPP
