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

#include "obb2d/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <set>

namespace obb2d {

using nlohmann::json;

std::optional<FixtureKind> parse_fixture_kind(std::string_view text) {
    if (text == "blob") {
        return FixtureKind::Blob;
    }
    if (text == "gear") {
        return FixtureKind::Gear;
    }
    if (text == "star") {
        return FixtureKind::Star;
    }
    return std::nullopt;
}

std::string_view to_string(FixtureKind kind) {
    switch (kind) {
    case FixtureKind::Blob:
        return "blob";
    case FixtureKind::Gear:
        return "gear";
    case FixtureKind::Star:
        return "star";
    }
    return "unknown";
}

ClosedContour generate_fixture(FixtureKind kind, int m, double roughness, std::uint64_t seed,
                               double radius) {
    if (m < 8 || log2_exact(static_cast<std::size_t>(m)) < 0) {
        throw std::invalid_argument("fixture size must be a power of two >= 8, got " +
                                    std::to_string(m));
    }
    if (!(roughness >= 0.0) || !(radius > 0.0)) {
        throw std::invalid_argument("fixture roughness must be >= 0 and radius > 0");
    }
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::function<double(double)> profile;
    switch (kind) {
    case FixtureKind::Blob: {
        std::vector<std::pair<double, double>> harmonics; // amplitude, phase
        for (int h = 2; h <= 5; ++h) {
            const double amplitude = (0.04 + 0.08 * unit(rng)) / h;
            harmonics.emplace_back(amplitude, kTwoPi * unit(rng));
        }
        profile = [harmonics](double theta) {
            double r = 1.0;
            int h = 2;
            for (const auto& [amplitude, phase] : harmonics) {
                r += amplitude * std::cos(h * theta + phase);
                ++h;
            }
            return r;
        };
        break;
    }
    case FixtureKind::Gear: {
        const int teeth = 8 + static_cast<int>(rng() % 9);
        const double phase = kTwoPi * unit(rng);
        profile = [teeth, phase](double theta) {
            return 1.0 + 0.1 * std::tanh(3.0 * std::cos(teeth * theta + phase));
        };
        break;
    }
    case FixtureKind::Star: {
        const int lobes = 5 + static_cast<int>(rng() % 3);
        const double phase = kTwoPi * unit(rng);
        profile = [lobes, phase](double theta) {
            return 1.0 + 0.3 * std::cos(lobes * theta + phase);
        };
        break;
    }
    }

    std::vector<Vec2> points;
    points.reserve(static_cast<std::size_t>(m));
    for (int k = 0; k < m; ++k) {
        const double theta = kTwoPi * k / m;
        const double r = radius * profile(theta);
        points.emplace_back(r * std::cos(theta), r * std::sin(theta));
    }
    return ClosedContour(std::move(points), std::vector<double>(static_cast<std::size_t>(m), roughness));
}

std::size_t Scene::frame_count() const {
    std::size_t frames = 0;
    for (const SceneEntry& entry : objects) {
        frames = std::max(frames, entry.frames.size());
    }
    return frames;
}

std::size_t Scene::segment_count() const {
    std::size_t total = 0;
    for (const SceneEntry& entry : objects) {
        total += entry.contour.segment_count();
    }
    return total;
}

std::size_t Scene::boxes_total() const {
    std::size_t total = 0;
    for (const SceneEntry& entry : objects) {
        total += 2 * entry.contour.segment_count() - 1;
    }
    return total;
}

namespace {

template <typename T>
T field_or(const json& doc, const char* key, T fallback) {
    if (!doc.contains(key)) {
        return fallback;
    }
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("field \"") + key + "\" has the wrong type");
    }
}

SceneEntry entry_from_json(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object()) {
        throw InputError("scene object must be a JSON object");
    }
    std::optional<ClosedContour> contour;
    std::string source;
    if (doc.contains("contour")) {
        const json& ref = doc.at("contour");
        if (ref.is_string()) {
            const std::filesystem::path path = base_dir / ref.get<std::string>();
            contour = load_contour(path);
            source = ref.get<std::string>();
        } else {
            contour = contour_from_json(ref);
            source = "inline";
        }
    } else if (doc.contains("fixture")) {
        const json& fx = doc.at("fixture");
        const auto kind_name = field_or<std::string>(fx, "kind", "blob");
        const auto kind = parse_fixture_kind(kind_name);
        if (!kind) {
            throw InputError("unknown fixture kind \"" + kind_name + "\"");
        }
        const int m = field_or<int>(fx, "m", 64);
        const double roughness = field_or<double>(fx, "roughness", 0.0);
        const auto seed = field_or<std::uint64_t>(fx, "seed", 1);
        const double radius = field_or<double>(fx, "radius", 100.0);
        try {
            contour = generate_fixture(*kind, m, roughness, seed, radius);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
        source = kind_name + ":" + std::to_string(m) + ":" + std::to_string(seed);
    } else {
        throw InputError("scene object needs \"contour\" or \"fixture\"");
    }

    SceneEntry entry{source, std::move(*contour), RigidPose{}, {}};
    if (doc.contains("pose")) {
        entry.pose = pose_from_json(doc.at("pose"));
    }
    if (doc.contains("frames")) {
        const json& frames = doc.at("frames");
        if (!frames.is_array()) {
            throw InputError("\"frames\" must be an array of poses");
        }
        for (const json& f : frames) {
            entry.frames.push_back(pose_from_json(f));
        }
    }
    return entry;
}

} // namespace

Scene scene_from_json(const json& doc, const std::filesystem::path& base_dir) {
    if (!doc.is_object() || !doc.contains("objects") || !doc.at("objects").is_array()) {
        throw InputError("scene needs an \"objects\" array");
    }
    Scene scene;
    scene.name = field_or<std::string>(doc, "name", "scene");
    scene.seed = field_or<std::uint64_t>(doc, "seed", 0);
    for (const json& obj : doc.at("objects")) {
        scene.objects.push_back(entry_from_json(obj, base_dir));
    }
    if (scene.objects.size() < 2) {
        throw InputError("scene needs at least two objects");
    }
    const std::size_t frames = scene.frame_count();
    for (const SceneEntry& entry : scene.objects) {
        if (!entry.frames.empty() && entry.frames.size() != frames) {
            throw InputError("objects have frame lists of different lengths");
        }
    }
    return scene;
}

Scene load_scene(const std::filesystem::path& path) {
    try {
        return scene_from_json(read_json_file(path), path.parent_path());
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::vector<SceneObject> BuiltScene::objects(const Scene& scene) const {
    std::vector<SceneObject> out;
    out.reserve(scene.objects.size());
    for (std::size_t k = 0; k < scene.objects.size(); ++k) {
        out.push_back({&trees[k], &scene.objects[k].contour, scene.objects[k].pose});
    }
    return out;
}

std::vector<SceneObject> BuiltScene::objects_at_frame(const Scene& scene, std::size_t frame) const {
    std::vector<SceneObject> out = objects(scene);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const auto& frames = scene.objects[k].frames;
        if (!frames.empty()) {
            out[k].pose = frames.at(frame);
        }
    }
    return out;
}

BuiltScene build_scene(const Scene& scene, AdaptationMethod method, const ElementaryFitOptions& fit) {
    BuiltScene built;
    built.method = method;
    built.trees.reserve(scene.objects.size());
    for (const SceneEntry& entry : scene.objects) {
        built.trees.push_back(build_tree(entry.contour, method, fit));
    }
    return built;
}

ExperimentRecord summarize(const Scene& scene, const BuiltScene& built, std::size_t frame,
                           const std::vector<InterferenceReport>& reports) {
    ExperimentRecord record;
    record.scene = scene.name;
    record.method = built.method;
    record.frame = frame;
    record.objects = scene.objects.size();
    record.segments = scene.segment_count();
    record.boxes_total = scene.boxes_total();
    for (const InterferenceReport& report : reports) {
        record.boxes_tested += report.boxes_tested;
        record.candidates += report.candidate_pairs.size();
        record.contacts += report.contacts.size();
    }
    for (const BoxTree& tree : built.trees) {
        const auto levels = static_cast<std::size_t>(tree.leaf_level() + 1);
        if (record.area_by_level.size() < levels) {
            record.area_by_level.resize(levels, 0.0);
        }
        for (int j = 0; j <= tree.leaf_level(); ++j) {
            record.area_by_level[static_cast<std::size_t>(j)] += total_box_area(tree, j);
        }
    }
    return record;
}

ExperimentResult run_experiment(const Scene& scene, AdaptationMethod method, int repeats,
                                const DetectOptions& options, const ElementaryFitOptions& fit) {
    const BuiltScene built = build_scene(scene, method, fit);
    const std::vector<SceneObject> objects = built.objects(scene);
    ExperimentResult result;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < std::max(repeats, 1); ++k) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<InterferenceReport> reports = detect_scene(objects, options);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        best = std::min(best, elapsed.count());
        result.reports = std::move(reports);
    }
    result.record = summarize(scene, built, 0, result.reports);
    result.record.wall_time_s = best;
    return result;
}

std::vector<Contact> all_pairs_contacts(const ClosedContour& contour_a, const RigidPose& pose_a,
                                        const ClosedContour& contour_b, const RigidPose& pose_b,
                                        const DetectOptions& options) {
    std::vector<Contact> contacts;
    const auto ma = static_cast<int>(contour_a.segment_count());
    const auto mb = static_cast<int>(contour_b.segment_count());
    for (int a = 0; a < ma; ++a) {
        for (int b = 0; b < mb; ++b) {
            if (auto contact = narrow_phase(contour_a, a, pose_a, contour_b, b, pose_b, options)) {
                contacts.push_back(*contact);
            }
        }
    }
    return contacts;
}

OracleResult run_oracle_check(const Scene& scene, AdaptationMethod method,
                              const DetectOptions& options) {
    for (const SceneEntry& entry : scene.objects) {
        if (entry.contour.segment_count() > kOracleMaxSegments) {
            throw InputError("oracle check supports at most " + std::to_string(kOracleMaxSegments) +
                             " segments per object; \"" + entry.source + "\" has " +
                             std::to_string(entry.contour.segment_count()));
        }
    }
    const BuiltScene built = build_scene(scene, method);
    OracleResult result;
    const std::size_t frames = std::max<std::size_t>(scene.frame_count(), 1);
    for (std::size_t frame = 0; frame < frames; ++frame) {
        const std::vector<SceneObject> objects = scene.frame_count() == 0
                                                     ? built.objects(scene)
                                                     : built.objects_at_frame(scene, frame);
        const std::vector<InterferenceReport> reports = detect_scene(objects, options);
        for (const InterferenceReport& report : reports) {
            std::set<std::pair<int, int>> found;
            for (const Contact& c : report.contacts) {
                found.emplace(c.segment_a, c.segment_b);
            }
            result.tree_contacts += report.contacts.size();
            const SceneObject& oa = objects[static_cast<std::size_t>(report.object_a)];
            const SceneObject& ob = objects[static_cast<std::size_t>(report.object_b)];
            const std::vector<Contact> expected =
                all_pairs_contacts(*oa.contour, oa.pose, *ob.contour, ob.pose, options);
            result.oracle_contacts += expected.size();
            for (const Contact& c : expected) {
                if (!found.contains({c.segment_a, c.segment_b})) {
                    result.missing.push_back({report.object_a, report.object_b, c.segment_a, c.segment_b});
                }
            }
        }
    }
    result.pass = result.missing.empty();
    return result;
}

std::vector<ExperimentRecord> animate(const Scene& scene, AdaptationMethod method,
                                      const DetectOptions& options,
                                      const std::function<void(const ExperimentRecord&)>& sink) {
    const BuiltScene built = build_scene(scene, method);
    std::vector<ExperimentRecord> records;
    const std::size_t frames = scene.frame_count();
    records.reserve(frames);
    for (std::size_t frame = 0; frame < frames; ++frame) {
        const std::vector<SceneObject> objects = built.objects_at_frame(scene, frame);
        const auto start = std::chrono::steady_clock::now();
        const std::vector<InterferenceReport> reports = detect_scene(objects, options);
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
        ExperimentRecord record = summarize(scene, built, frame, reports);
        record.wall_time_s = elapsed.count();
        if (sink) {
            sink(record);
        }
        records.push_back(std::move(record));
    }
    return records;
}

namespace {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string format_fixed(double value, int precision) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + '"';
}

} // namespace

void write_csv_header(std::ostream& out) {
    out << "scene,method,frame,objects,segments,boxes_total,boxes_tested,candidates,contacts,"
           "area_total,area_by_level,wall_time_s\n";
}

void write_csv_row(std::ostream& out, const ExperimentRecord& record) {
    double area_total = 0.0;
    std::string levels;
    for (std::size_t j = 0; j < record.area_by_level.size(); ++j) {
        area_total += record.area_by_level[j];
        if (j > 0) {
            levels += ';';
        }
        levels += format_double(record.area_by_level[j]);
    }
    out << csv_field(record.scene) << ',' << to_string(record.method) << ',' << record.frame << ','
        << record.objects << ',' << record.segments << ',' << record.boxes_total << ','
        << record.boxes_tested << ',' << record.candidates << ',' << record.contacts << ','
        << format_double(area_total) << ',' << levels << ',' << format_fixed(record.wall_time_s, 9)
        << '\n';
}

namespace {

double parse_eps(std::string_view text) {
    while (!text.empty() && text.front() == ' ') {
        text.remove_prefix(1);
    }
    while (!text.empty() && text.back() == ' ') {
        text.remove_suffix(1);
    }
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !(value >= 0.0)) {
        throw InputError("OBB2D_EPS: cannot parse \"" + std::string(text) + "\" as a non-negative number");
    }
    return value;
}

} // namespace

DetectOptions detect_options_from_env(DetectOptions options) {
    const char* raw = std::getenv("OBB2D_EPS");
    if (raw == nullptr || *raw == '\0') {
        return options;
    }
    const std::string_view text(raw);
    const auto comma = text.find(',');
    if (comma == std::string_view::npos) {
        options.eps_sep = options.eps_contact = parse_eps(text);
    } else {
        options.eps_sep = parse_eps(text.substr(0, comma));
        options.eps_contact = parse_eps(text.substr(comma + 1));
    }
    return options;
}

} // namespace obb2d
