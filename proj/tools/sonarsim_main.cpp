// sonarsim CLI: render sonar frames from scene files, run MSIS scans, the
// benchmark protocol and frame similarity comparison.
//
// Exit codes: 0 success, 1 usage, 2 I/O failure, 3 validation failure.

#include "sonarsim/errors.hpp"
#include "sonarsim/frame_io.hpp"
#include "sonarsim/metrics.hpp"
#include "sonarsim/pipeline.hpp"
#include "sonarsim/run_config.hpp"
#include "sonarsim/scene_io.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

using namespace sonarsim;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitValidation = 3;

struct CliFlags {
    std::string config_path;
    std::string device;
    std::string scene;
    int beams = -1;
    int bins = -1;
    double fov_az_deg = -1.0;
    double fov_el_deg = -1.0;
    double range_min = -1.0;
    double range_max = -1.0;
    double frequency = -1.0;
    double step_deg = -1.0;
    std::int64_t seed = -1;
    bool no_noise = false;
    bool no_attenuation = false;
    bool no_secondary = false;
    bool dump_shader = false;
    std::string frame_out;
    std::string image_out;
    int image_bits = 0;
};

void add_common_flags(CLI::App* cmd, CliFlags& flags) {
    cmd->add_option("--config", flags.config_path, "YAML config file");
    cmd->add_option("--scene", flags.scene, "scene description file");
    cmd->add_option("--device", flags.device, "sonar device: fls or msis");
    cmd->add_option("--beams", flags.beams, "number of beams");
    cmd->add_option("--bins", flags.bins, "number of range bins");
    cmd->add_option("--fov-az", flags.fov_az_deg, "azimuth field of view, degrees");
    cmd->add_option("--fov-el", flags.fov_el_deg, "elevation field of view, degrees");
    cmd->add_option("--range-min", flags.range_min, "minimum range, m");
    cmd->add_option("--range-max", flags.range_max, "maximum range, m");
    cmd->add_option("--freq", flags.frequency, "acoustic frequency, kHz");
    cmd->add_option("--seed", flags.seed, "noise / perturbation seed");
    cmd->add_flag("--no-noise", flags.no_noise, "disable speckle noise");
    cmd->add_flag("--no-attenuation", flags.no_attenuation, "disable attenuation");
    cmd->add_flag("--no-secondary", flags.no_secondary, "disable the ray-traced pass");
    cmd->add_flag("--dump-shader", flags.dump_shader,
                  "also write the shader image as two graymaps");
    cmd->add_option("--out", flags.frame_out, "output frame file (.sf)");
    cmd->add_option("--image", flags.image_out, "output Cartesian image (.pgm)");
    cmd->add_option("--bits", flags.image_bits, "PGM sample depth, 8 or 16");
}

RunConfig merge_config(const CliFlags& flags) {
    RunConfig config;
    if (!flags.config_path.empty()) {
        apply_config_file(config, flags.config_path);
    }
    if (!flags.device.empty()) {
        if (flags.device == "fls") {
            config.sonar.device = DeviceKind::FLS;
        } else if (flags.device == "msis") {
            config.sonar.device = DeviceKind::MSIS;
            config.sonar.n_beams = 1;
        } else {
            throw CLI::ValidationError("--device", "must be 'fls' or 'msis'");
        }
    }
    if (!flags.scene.empty()) config.scene_path = flags.scene;
    if (flags.beams >= 0) config.sonar.n_beams = flags.beams;
    if (flags.bins >= 0) config.sonar.n_bins = flags.bins;
    if (flags.fov_az_deg > 0.0) config.sonar.fov_azimuth = flags.fov_az_deg * M_PI / 180.0;
    if (flags.fov_el_deg > 0.0) {
        config.sonar.fov_elevation = flags.fov_el_deg * M_PI / 180.0;
    }
    if (flags.range_min > 0.0) config.sonar.range_min = flags.range_min;
    if (flags.range_max > 0.0) config.sonar.range_max = flags.range_max;
    if (flags.frequency > 0.0) config.sonar.frequency = flags.frequency;
    if (flags.step_deg > 0.0) config.msis_step_deg = flags.step_deg;
    if (flags.seed >= 0) config.seed = static_cast<std::uint64_t>(flags.seed);
    if (flags.no_noise) config.options.noise = false;
    if (flags.no_attenuation) config.options.attenuation = false;
    if (flags.no_secondary) config.options.secondary = false;
    if (flags.dump_shader) config.dump_shader = true;
    if (!flags.frame_out.empty()) config.frame_out = flags.frame_out;
    if (!flags.image_out.empty()) config.image_out = flags.image_out;
    if (flags.image_bits > 0) config.image_bits = flags.image_bits;
    config.finalize();
    return config;
}

void dump_shader_images(const ReflectionImage& shader, double range_min,
                        double range_max, const std::string& frame_out) {
    const std::string stem = std::filesystem::path(frame_out).replace_extension("").string();
    std::vector<float> dist(shader.size(), 0.0f);
    std::vector<float> inten(shader.size(), 0.0f);
    const double span = range_max - range_min;
    for (std::size_t i = 0; i < shader.size(); ++i) {
        if (shader.distance[i] == kNoSample) continue;
        dist[i] = static_cast<float>(
            std::clamp((shader.distance[i] - range_min) / span, 0.0, 1.0));
        inten[i] = static_cast<float>(shader.intensity[i]);
    }
    save_pgm(dist, shader.width, shader.height, stem + "_distance.pgm");
    save_pgm(inten, shader.width, shader.height, stem + "_intensity.pgm");
}

int cmd_render(const CliFlags& flags) {
    RunConfig config = merge_config(flags);
    if (config.scene_path.empty()) {
        std::cerr << "render: no scene file given (--scene)\n";
        return kExitUsage;
    }
    std::cout << echo_config(config);
    const Scene scene = load_scene(config.scene_path);

    SimulationOptions options = config.options;
    const SimulationRun run = simulate_frame(scene, config.sonar, options);
    save_frame(run.frame, config.frame_out);
    save_pgm(frame_to_cartesian(run.frame, config.cartesian_width, config.cartesian_height),
             config.image_out, config.image_bits);
    if (config.dump_shader) {
        dump_shader_images(run.shader, config.sonar.range_min, config.sonar.range_max,
                           config.frame_out);
    }
    std::cout << "wrote " << config.frame_out << " and " << config.image_out << "\n";
    return kExitOk;
}

int cmd_scan(const CliFlags& flags) {
    RunConfig config = merge_config(flags);
    if (config.sonar.device != DeviceKind::MSIS) {
        std::cerr << "scan: device must be msis\n";
        return kExitUsage;
    }
    if (config.scene_path.empty()) {
        std::cerr << "scan: no scene file given (--scene)\n";
        return kExitUsage;
    }
    std::cout << echo_config(config);
    const Scene scene = load_scene(config.scene_path);

    const double step = config.sonar.msis_step;
    const int n_steps = std::max(1, static_cast<int>(std::ceil(2.0 * M_PI / step - 1e-9)));
    std::vector<SonarFrame> frames;
    frames.reserve(static_cast<std::size_t>(n_steps));
    const Eigen::Isometry3d base_pose = config.options.pose;
    for (int k = 0; k < n_steps; ++k) {
        SimulationOptions options = config.options;
        const double yaw = k * step;
        options.pose = base_pose * Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ());
        options.frame_index = static_cast<std::uint64_t>(k);
        SimulationRun run = simulate_frame(scene, config.sonar, options);
        run.frame.bearings[0] = yaw;  // head bearing of this slice
        frames.push_back(std::move(run.frame));
    }
    const SonarFrame mosaic = accumulate_msis_scan(frames, step);
    save_frame(mosaic, config.frame_out);
    save_pgm(frame_to_cartesian(mosaic, config.cartesian_width, config.cartesian_height),
             config.image_out, config.image_bits);
    std::cout << "wrote " << config.frame_out << " (" << mosaic.n_beams
              << " beams) and " << config.image_out << "\n";
    return kExitOk;
}

int cmd_bench(const std::string& preset, int samples, std::uint64_t seed, bool ablation,
              const std::string& out_path) {
    std::vector<std::pair<std::string, SonarConfig>> matrix;
    if (preset == "paper-fls" || preset == "all") {
        auto fls = benchmark_preset_fls();
        matrix.insert(matrix.end(), fls.begin(), fls.end());
    }
    if (preset == "paper-msis" || preset == "all") {
        auto msis = benchmark_preset_msis();
        matrix.insert(matrix.end(), msis.begin(), msis.end());
    }
    if (matrix.empty()) {
        std::cerr << "bench: unknown preset '" << preset
                  << "' (expected paper-fls, paper-msis or all)\n";
        return kExitUsage;
    }

    const BenchmarkReport report = run_benchmark(matrix, samples, seed);
    std::string text = format_report(report);

    if (ablation) {
        const SonarConfig& config = matrix.front().second;
        const Scene scene = random_benchmark_scene(
            seed, FrustumSpec{config.range_min, config.range_max, config.fov_azimuth,
                              config.fov_elevation});
        text += format_ablation(run_ablation(scene, config));
    }

    std::cout << text;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out || !(out << text)) {
            throw IoError("cannot write report: " + out_path);
        }
        std::cout << "wrote " << out_path << "\n";
    }
    return kExitOk;
}

int cmd_compare(const std::string& path_a, const std::string& path_b,
                const std::string& out_path) {
    const SonarFrame a = load_frame(path_a);
    const SonarFrame b = load_frame(path_b);
    const SimilarityReport report =
        compare_grids(MetricGrid::from_frame(a), MetricGrid::from_frame(b));
    std::ostringstream oss;
    oss << "mse_similarity: " << report.mse_similarity << "\n"
        << "psnr_similarity: " << report.psnr_similarity << "\n"
        << "ssim: " << report.ssim << "\n"
        << "ms_ssim: " << report.ms_ssim << "\n";
    std::cout << oss.str();
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out || !(out << oss.str())) {
            throw IoError("cannot write report: " + out_path);
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"multi-device imaging sonar simulator"};
    app.require_subcommand(1);

    CliFlags render_flags;
    CLI::App* render = app.add_subcommand("render", "render one sonar frame");
    add_common_flags(render, render_flags);

    CliFlags scan_flags;
    CLI::App* scan = app.add_subcommand("scan", "full MSIS revolution into a mosaic");
    add_common_flags(scan, scan_flags);
    scan->add_option("--step-deg", scan_flags.step_deg, "scan step, degrees");

    std::string bench_preset = "all";
    int bench_samples = 500;
    std::int64_t bench_seed = 0;
    bool bench_ablation = false;
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "random-scene timing benchmark");
    bench->add_option("--preset", bench_preset, "paper-fls, paper-msis or all");
    bench->add_option("--samples", bench_samples, "samples per configuration");
    bench->add_option("--seed", bench_seed, "scene sequence seed");
    bench->add_flag("--ablation", bench_ablation, "include the culling ablation");
    bench->add_option("--out", bench_out, "also write the report to a file");

    std::string cmp_a, cmp_b, cmp_out;
    CLI::App* compare = app.add_subcommand("compare", "similarity of two .sf frames");
    compare->add_option("frame_a", cmp_a, "first frame file")->required();
    compare->add_option("frame_b", cmp_b, "second frame file")->required();
    compare->add_option("--out", cmp_out, "also write the report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (render->parsed()) return cmd_render(render_flags);
        if (scan->parsed()) return cmd_scan(scan_flags);
        if (bench->parsed()) {
            return cmd_bench(bench_preset, bench_samples,
                             static_cast<std::uint64_t>(bench_seed), bench_ablation,
                             bench_out);
        }
        if (compare->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_out);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
