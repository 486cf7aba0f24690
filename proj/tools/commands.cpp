#include "commands.hpp"

#include <array>
#include <fstream>
#include <ostream>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "roampath/camera.hpp"
#include "roampath/error.hpp"
#include "roampath/report.hpp"
#include "roampath/sim.hpp"
#include "roampath/study.hpp"

namespace roampath::cli {

namespace fs = std::filesystem;

void write_outputs(const fs::path& dir, std::span<const OutputFile> files) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(Errc::io, "cannot create output directory " + dir.string());
    for (const auto& f : files) {
        const fs::path target = dir / f.name;
        const fs::path tmp = dir / (f.name + ".tmp");
        {
            std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
            os << f.content;
            if (!os) throw Error(Errc::io, "cannot write " + tmp.string());
        }
        fs::rename(tmp, target, ec);
        if (ec) throw Error(Errc::io, "cannot write " + target.string());
    }
}

std::vector<OutputFile> path_compare(const PathCompareConfig& config) {
    const auto kps = load_keypoints_file(config.keypoints);
    const auto pts = project_all(kps, config.projection);

    PathCompareOptions options;
    options.samples_per_segment = config.samples;
    options.tangent_arrows = config.tangent_arrows;
    const std::string svg = render_svg(path_compare_figure(pts, config.tension, options));

    // Each kind with the view model it is paired with when roaming.
    const std::array<std::pair<CurveKind, ViewModel>, 3> combos = {{
        {CurveKind::polyline, ViewModel::next_node},
        {CurveKind::bezier, ViewModel::tangent},
        {CurveKind::catmull_rom, ViewModel::tangent},
    }};
    std::vector<SmoothnessRow> rows;
    for (const auto& [kind, model] : combos) {
        const auto curve = PathCurve::make(kind, pts, config.tension);
        rows.push_back({kind, model, smoothness(curve, model, config.samples)});
    }
    return {{"compare.svg", svg}, {"smoothness.csv", smoothness_csv(rows)}};
}

std::vector<OutputFile> sim_run(const SimRunConfig& config) {
    const auto kps = load_keypoints_file(config.keypoints);
    const auto scene = load_scene_file(config.scene);
    const auto pts = project_all(kps, config.projection);
    const auto profile = SpeedProfile::from_keypoints(kps);

    std::vector<CurveKind> kinds = {CurveKind::polyline, CurveKind::bezier, CurveKind::catmull_rom};
    if (config.kind) kinds = {*config.kind};

    std::optional<RayTaskOptions> rays;
    if (!scene.targets.empty()) {
        rays = RayTaskOptions{config.sigma, config.seed, config.trigger_distance};
    }

    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const auto kind : kinds) {
        const auto curve = PathCurve::make(kind, pts, config.tension);
        nlohmann::ordered_json entry = {{"kind", std::string(to_string(kind))}};
        entry.update(to_json(traverse(curve, profile, scene, config.dt, rays)));
        runs.push_back(std::move(entry));
    }
    const nlohmann::ordered_json doc = {{"dt", config.dt},
                                        {"seed", config.seed},
                                        {"sigma", config.sigma},
                                        {"tension", config.tension.value()},
                                        {"runs", runs}};
    return {{"sim.json", doc.dump(2) + "\n"}};
}

std::vector<OutputFile> study_analyze(const StudyAnalyzeConfig& config) {
    const auto records = load_study_file(config.study);
    AnalyzeOptions options;
    options.alpha = config.alpha;
    options.seed = config.seed;
    options.replicates = config.replicates;
    const auto report = analyze_study(records, options);

    std::vector<OutputFile> files;
    files.push_back({"stats.json", to_json(report).dump(2) + "\n"});

    std::vector<MetricColumn> metrics;
    for (const char* name : {"time_s", "collisions", "accuracy"}) {
        metrics.push_back({name, study_column(records, name)});
    }
    files.push_back({"metrics.csv", metrics_csv(metrics)});

    const auto engagement = study_column(records, "engagement");
    for (const auto& pair : report.correlations) {
        const auto x = study_column(records, pair.y);
        const auto fit = linear_fit_with_band(x, engagement);
        const ScatterLabels labels{pair.y + " vs engagement (" +
                                       std::string(to_string(pair.result.method)) + ")",
                                   pair.y, "engagement"};
        files.push_back({"scatter_" + pair.y + ".svg",
                         render_scatter_band(x, engagement, fit, labels)});
    }
    return files;
}

std::vector<OutputFile> study_synth(const StudySynthConfig& config) {
    return {{"study.csv", serialize_study(synthesize_study(config.participants, config.seed))}};
}

namespace {

Projection make_projection(const std::string& mode, const std::vector<double>& scale) {
    if (mode == "raw") return Projection::raw();
    if (scale.size() != 3) {
        throw Error(Errc::invalid_input, "--scale needs three factors sx,sy,sz");
    }
    return Projection::scaled(scale[0], scale[1], scale[2]);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Waypoint trajectories, roaming simulation and study statistics", "roampath"};
    app.require_subcommand(1);

    std::string out_dir;
    double tension = Tension::kDefault;
    std::string projection_mode = "raw";
    std::vector<double> scale;
    const auto add_common = [&](CLI::App* cmd, bool curves) {
        cmd->add_option("--out", out_dir, "Output directory")->required();
        if (curves) {
            cmd->add_option("--tension", tension, "Catmull-Rom tension in [0, 1]")
                ->check(CLI::Range(0.0, 1.0))
                ->capture_default_str();
            cmd->add_option("--projection", projection_mode, "Keypoint projection")
                ->check(CLI::IsMember({"raw", "scaled"}))
                ->capture_default_str();
            cmd->add_option("--scale", scale, "Scale factors sx,sy,sz for --projection scaled")
                ->delimiter(',')
                ->expected(3);
        }
    };

    auto* path = app.add_subcommand("path", "Path generation and comparison");
    path->require_subcommand(1);
    auto* compare = path->add_subcommand("compare", "Render the three path kinds and their smoothness");
    std::string keypoints_file;
    std::size_t samples = 32;
    bool arrows = false;
    compare->add_option("keypoints", keypoints_file, "Keypoint CSV")->required();
    compare->add_option("--samples", samples, "Samples per segment (>= 16)")
        ->check(CLI::Range(std::size_t{16}, std::size_t{1} << 20))
        ->capture_default_str();
    compare->add_flag("--tangents", arrows, "Annotate Catmull-Rom tangents");
    add_common(compare, true);

    auto* sim = app.add_subcommand("sim", "Roaming simulation");
    sim->require_subcommand(1);
    auto* sim_run_cmd = sim->add_subcommand("run", "Traverse a path through a scene");
    std::string scene_file;
    double dt = 0.01;
    std::uint64_t seed = 1;
    double sigma = 0.05;
    std::string kind_name;
    double trigger = -1.0;
    sim_run_cmd->add_option("keypoints", keypoints_file, "Keypoint CSV")->required();
    sim_run_cmd->add_option("scene", scene_file, "Scene JSON")->required();
    sim_run_cmd->add_option("--dt", dt, "Timestep in seconds")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    sim_run_cmd->add_option("--seed", seed, "Aim-noise seed")->capture_default_str();
    sim_run_cmd->add_option("--sigma", sigma, "Aim error per axis in radians")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();
    sim_run_cmd->add_option("--kind", kind_name, "Only this curve kind")
        ->check(CLI::IsMember({"polyline", "bezier", "catmull_rom"}));
    sim_run_cmd->add_option("--trigger", trigger, "Ray trigger distance beyond a target surface")
        ->check(CLI::NonNegativeNumber);
    add_common(sim_run_cmd, true);

    auto* study = app.add_subcommand("study", "User-study statistics");
    study->require_subcommand(1);
    auto* analyze = study->add_subcommand("analyze", "Normality screen, correlations and plots");
    std::string study_file;
    std::size_t replicates = 10000;
    double alpha = 0.05;
    analyze->add_option("study", study_file, "Study CSV")->required();
    analyze->add_option("--seed", seed, "Monte-Carlo seed for the normality test")
        ->capture_default_str();
    analyze->add_option("--replicates", replicates, "Monte-Carlo replicates")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    analyze->add_option("--alpha", alpha, "Normality screen level")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    add_common(analyze, false);

    auto* synth = study->add_subcommand("synth", "Write a seeded synthetic study CSV");
    std::size_t participants = 50;
    std::uint64_t synth_seed = 7;
    synth->add_option("--n", participants, "Participants")
        ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}))
        ->capture_default_str();
    synth->add_option("--seed", synth_seed, "Generator seed")->capture_default_str();
    add_common(synth, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        std::vector<OutputFile> files;
        if (*compare) {
            PathCompareConfig config;
            config.keypoints = keypoints_file;
            config.tension = Tension(tension);
            config.samples = samples;
            config.projection = make_projection(projection_mode, scale);
            config.tangent_arrows = arrows;
            files = path_compare(config);
        } else if (*sim_run_cmd) {
            SimRunConfig config;
            config.keypoints = keypoints_file;
            config.scene = scene_file;
            config.dt = dt;
            config.seed = seed;
            config.sigma = sigma;
            if (!kind_name.empty()) config.kind = curve_kind_from_string(kind_name);
            if (trigger >= 0.0) config.trigger_distance = trigger;
            config.tension = Tension(tension);
            config.projection = make_projection(projection_mode, scale);
            files = sim_run(config);
        } else if (*analyze) {
            files = study_analyze({study_file, seed, replicates, alpha});
        } else if (*synth) {
            files = study_synth({participants, synth_seed});
        }
        write_outputs(out_dir, files);
        for (const auto& f : files) out << (fs::path(out_dir) / f.name).string() << "\n";
        return 0;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
    }
    return 1;
}

}  // namespace roampath::cli
