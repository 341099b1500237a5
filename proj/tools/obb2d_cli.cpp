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

// obb2d: build oriented-box trees over B-spline contours and run
// interference experiments.
//
// Exit codes: 0 success / oracle pass, 1 oracle mismatch, 2 input error.

#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "obb2d/harness.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMismatch = 1;
constexpr int kExitInput = 2;

using namespace obb2d;

AdaptationMethod method_or_throw(const std::string& text) {
    const auto method = parse_method(text);
    if (!method) {
        throw InputError("unknown method \"" + text + "\" (expected elementary or multires)");
    }
    return *method;
}

/// stdout when path is empty or "-".
class OutputTarget {
public:
    explicit OutputTarget(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw InputError("cannot write " + path);
            }
        }
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

struct GenArgs {
    std::string kind = "blob";
    int m = 512;
    double roughness = 0.0;
    std::uint64_t seed = 1;
    double radius = 100.0;
    std::string out;
};

int run_gen(const GenArgs& args) {
    const auto kind = parse_fixture_kind(args.kind);
    if (!kind) {
        throw InputError("unknown fixture kind \"" + args.kind + "\"");
    }
    ClosedContour contour = [&] {
        try {
            return generate_fixture(*kind, args.m, args.roughness, args.seed, args.radius);
        } catch (const std::invalid_argument& e) {
            throw InputError(e.what());
        }
    }();
    OutputTarget out(args.out);
    out.stream() << contour_to_json(contour).dump(2) << '\n';
    return kExitOk;
}

struct BuildArgs {
    std::string contour;
    std::string method = "multires";
    int samples = 5;
    bool arc_length = false;
    bool dump_tree = false;
    bool dump_pyramid = false;
    std::string out;
};

int run_build(const BuildArgs& args) {
    const ClosedContour contour = load_contour(args.contour);
    const AdaptationMethod method = method_or_throw(args.method);
    if (args.samples < 2) {
        throw InputError("--r must be at least 2");
    }
    ElementaryFitOptions fit;
    fit.samples = args.samples;
    fit.spacing = args.arc_length ? SampleSpacing::ArcLength : SampleSpacing::Parameter;

    const ContourPyramid pyramid = build_pyramid(contour);
    const BoxTree tree = build_tree(contour, &pyramid, method, fit);

    OutputTarget out(args.out);
    nlohmann::json doc;
    doc["segments"] = contour.segment_count();
    doc["method"] = std::string(to_string(method));
    doc["node_count"] = tree.node_count();
    nlohmann::json areas = nlohmann::json::array();
    for (int j = 0; j <= tree.leaf_level(); ++j) {
        areas.push_back(total_box_area(tree, j));
    }
    doc["area_by_level"] = std::move(areas);
    if (args.dump_tree) {
        doc["tree"] = tree_to_json(tree);
    }
    if (args.dump_pyramid) {
        doc["pyramid"] = pyramid_to_json(pyramid);
    }
    out.stream() << doc.dump(2) << '\n';
    return kExitOk;
}

struct SceneArgs {
    std::string scene;
    std::string method = "multires";
    std::string out;
    std::string json_out;
    int repeat = 5;
};

int run_detect(const SceneArgs& args, const DetectOptions& options) {
    const Scene scene = load_scene(args.scene);
    const AdaptationMethod method = method_or_throw(args.method);
    const ExperimentResult result = run_experiment(scene, method, 1, options);
    OutputTarget out(args.out);
    write_csv_header(out.stream());
    write_csv_row(out.stream(), result.record);
    if (!args.json_out.empty()) {
        OutputTarget json_out(args.json_out);
        nlohmann::json reports = nlohmann::json::array();
        for (const InterferenceReport& report : result.reports) {
            reports.push_back(report_to_json(report));
        }
        json_out.stream() << reports.dump(2) << '\n';
    }
    return kExitOk;
}

int run_bench(const SceneArgs& args, const DetectOptions& options) {
    const Scene scene = load_scene(args.scene);
    if (args.repeat < 1) {
        throw InputError("--repeat must be positive");
    }
    OutputTarget out(args.out);
    write_csv_header(out.stream());
    if (args.method == "both") {
        for (AdaptationMethod method : {AdaptationMethod::Elementary, AdaptationMethod::Multiresolution}) {
            write_csv_row(out.stream(), run_experiment(scene, method, args.repeat, options).record);
        }
    } else {
        const AdaptationMethod method = method_or_throw(args.method);
        write_csv_row(out.stream(), run_experiment(scene, method, args.repeat, options).record);
    }
    return kExitOk;
}

int run_oracle(const SceneArgs& args, const DetectOptions& options) {
    const Scene scene = load_scene(args.scene);
    const OracleResult result = run_oracle_check(scene, method_or_throw(args.method), options);
    std::cout << (result.pass ? "PASS" : "FAIL") << " scene=" << scene.name
              << " tree_contacts=" << result.tree_contacts
              << " oracle_contacts=" << result.oracle_contacts
              << " missing=" << result.missing.size() << '\n';
    for (const OracleMismatch& miss : result.missing) {
        std::cout << "  missing objects=(" << miss.object_a << ',' << miss.object_b << ") segments=("
                  << miss.segment_a << ',' << miss.segment_b << ")\n";
    }
    return result.pass ? kExitOk : kExitMismatch;
}

int run_animate(const SceneArgs& args, const DetectOptions& options) {
    const Scene scene = load_scene(args.scene);
    if (scene.frame_count() == 0) {
        throw InputError("scene has no frames to animate");
    }
    const AdaptationMethod method = method_or_throw(args.method);
    OutputTarget out(args.out);
    write_csv_header(out.stream());
    animate(scene, method, options,
            [&](const ExperimentRecord& record) { write_csv_row(out.stream(), record); });
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oriented bounding box trees for B-spline contours"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a fixture contour as JSON");
    gen_cmd->add_option("--kind", gen.kind, "blob, gear or star")->capture_default_str();
    gen_cmd->add_option("--m", gen.m, "Number of segments (power of two >= 8)")->capture_default_str();
    gen_cmd->add_option("--roughness", gen.roughness, "Roughness sigma per segment")->capture_default_str();
    gen_cmd->add_option("--seed", gen.seed, "Generator seed")->capture_default_str();
    gen_cmd->add_option("--radius", gen.radius, "Nominal radius")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output file (default stdout)");

    BuildArgs build;
    auto* build_cmd = app.add_subcommand("build", "Build a box tree for one contour");
    build_cmd->add_option("--contour", build.contour, "Contour JSON file")->required();
    build_cmd->add_option("--method", build.method, "elementary or multires")->capture_default_str();
    build_cmd->add_option("--r", build.samples, "Samples for box orientation")->capture_default_str();
    build_cmd->add_flag("--arc-length", build.arc_length, "Sample uniformly in arc length");
    build_cmd->add_flag("--dump-tree", build.dump_tree, "Include every node in the output");
    build_cmd->add_flag("--dump-pyramid", build.dump_pyramid, "Include the control polygon pyramid");
    build_cmd->add_option("--out", build.out, "Output file (default stdout)");

    SceneArgs detect;
    auto* detect_cmd = app.add_subcommand("detect", "Run interference detection on a scene");
    detect_cmd->add_option("--scene", detect.scene, "Scene JSON file")->required();
    detect_cmd->add_option("--method", detect.method, "elementary or multires")->capture_default_str();
    detect_cmd->add_option("--out", detect.out, "CSV output (default stdout)");
    detect_cmd->add_option("--json", detect.json_out, "Also write per-pair reports as JSON");

    SceneArgs bench;
    bench.method = "both";
    auto* bench_cmd = app.add_subcommand("bench", "Time detection (minimum over repetitions)");
    bench_cmd->add_option("--scene", bench.scene, "Scene JSON file")->required();
    bench_cmd->add_option("--method", bench.method, "elementary, multires or both")->capture_default_str();
    bench_cmd->add_option("--repeat", bench.repeat, "Repetitions")->capture_default_str();
    bench_cmd->add_option("--out", bench.out, "CSV output (default stdout)");

    SceneArgs oracle;
    auto* oracle_cmd = app.add_subcommand("oracle", "Compare against the all-pairs oracle");
    oracle_cmd->add_option("--scene", oracle.scene, "Scene JSON file")->required();
    oracle_cmd->add_option("--method", oracle.method, "elementary or multires")->capture_default_str();

    SceneArgs anim;
    auto* animate_cmd = app.add_subcommand("animate", "Run detection on every frame");
    animate_cmd->add_option("--scene", anim.scene, "Scene JSON file with frames")->required();
    animate_cmd->add_option("--method", anim.method, "elementary or multires")->capture_default_str();
    animate_cmd->add_option("--out", anim.out, "CSV output (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitInput;
    }

    try {
        const DetectOptions options = detect_options_from_env();
        if (*gen_cmd) {
            return run_gen(gen);
        }
        if (*build_cmd) {
            return run_build(build);
        }
        if (*detect_cmd) {
            return run_detect(detect, options);
        }
        if (*bench_cmd) {
            return run_bench(bench, options);
        }
        if (*oracle_cmd) {
            return run_oracle(oracle, options);
        }
        if (*animate_cmd) {
            return run_animate(anim, options);
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInput;
    }
    return kExitInput;
}
