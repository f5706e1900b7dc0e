#include "sonarsim/pipeline.hpp"

#include "sonarsim/acoustics.hpp"
#include "sonarsim/rng.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace sonarsim {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

SonarCamera make_camera(const SonarConfig& config, const SimulationOptions& options) {
    SonarCamera camera;
    camera.pose = options.pose;
    camera.fov_azimuth = config.fov_azimuth;
    camera.fov_elevation = config.fov_elevation;
    camera.range_min = config.range_min;
    camera.range_max = config.range_max;
    camera.width = options.image_width > 0 ? options.image_width
                                           : std::max(2 * config.n_beams, 16);
    if (options.image_height > 0) {
        camera.height = options.image_height;
    } else {
        const double aspect = std::tan(config.fov_elevation / 2.0) /
                              std::tan(config.fov_azimuth / 2.0);
        camera.height = std::max(1, static_cast<int>(std::lround(camera.width * aspect)));
    }
    return camera;
}

SimulationRun simulate_frame(const Scene& scene, const SonarConfig& config,
                             const SimulationOptions& options) {
    config.validate();
    SimulationRun run;
    const auto t_total = Clock::now();
    const SonarCamera camera = make_camera(config, options);

    auto t = Clock::now();
    GBuffer gbuffer = rasterize(scene, camera);
    run.stage_ms["1_rasterize"] = ms_since(t);

    t = Clock::now();
    gbuffer = perturb_normals(gbuffer, scene.materials, config.noise.seed);
    run.stage_ms["2_perturb_normals"] = ms_since(t);

    t = Clock::now();
    ReflectionImage primary = primary_reflections(gbuffer, camera, scene.materials);
    run.stage_ms["3_primary"] = ms_since(t);

    t = Clock::now();
    ReflectionImage secondary = ReflectionImage::empty(gbuffer.width, gbuffer.height);
    if (options.secondary) {
        TraceResult traced = secondary_reflections(gbuffer, scene, camera);
        secondary = std::move(traced.image);
        run.stats = traced.stats;
    }
    run.stage_ms["4_secondary"] = ms_since(t);

    t = Clock::now();
    ReflectionImage unified = unify_reflections(primary, secondary);
    run.stage_ms["5_unify"] = ms_since(t);

    t = Clock::now();
    if (options.attenuation) {
        const AttenuationBreakdown a =
            attenuation_coefficient(config.frequency, config.water);
        unified = apply_attenuation(unified, a.gamma);
    }
    run.stage_ms["6_attenuate"] = ms_since(t);

    t = Clock::now();
    run.frame = build_frame(unified, config, options.frame_index, options.noise);
    run.stage_ms["7_sonogram"] = ms_since(t);

    run.shader = std::move(unified);
    run.gbuffer = std::move(gbuffer);
    run.total_ms = ms_since(t_total);
    return run;
}

namespace {

SonarConfig fls_config(int beams, int bins, double fov_az_deg, double fov_el_deg) {
    SonarConfig c;
    c.device = DeviceKind::FLS;
    c.n_beams = beams;
    c.n_bins = bins;
    c.fov_azimuth = fov_az_deg * M_PI / 180.0;
    c.fov_elevation = fov_el_deg * M_PI / 180.0;
    return c;
}

SonarConfig msis_config(int bins, double fov_az_deg, double fov_el_deg) {
    SonarConfig c;
    c.device = DeviceKind::MSIS;
    c.n_beams = 1;
    c.n_bins = bins;
    c.fov_azimuth = fov_az_deg * M_PI / 180.0;
    c.fov_elevation = fov_el_deg * M_PI / 180.0;
    return c;
}

std::string setup_label(const SonarConfig& c) {
    std::ostringstream oss;
    oss << (c.device == DeviceKind::FLS ? "fls" : "msis") << " " << c.n_beams << "x"
        << c.n_bins << " " << std::lround(c.fov_azimuth * 180.0 / M_PI) << "x"
        << std::lround(c.fov_elevation * 180.0 / M_PI) << "deg";
    return oss.str();
}

}  // namespace

std::vector<std::pair<std::string, SonarConfig>> benchmark_preset_fls() {
    std::vector<std::pair<std::string, SonarConfig>> matrix;
    for (double fov_az : {120.0, 90.0}) {
        const double fov_el = fov_az == 120.0 ? 20.0 : 15.0;
        for (int beams : {128, 256}) {
            for (int bins : {500, 1000}) {
                SonarConfig c = fls_config(beams, bins, fov_az, fov_el);
                matrix.emplace_back(setup_label(c), c);
            }
        }
    }
    return matrix;
}

std::vector<std::pair<std::string, SonarConfig>> benchmark_preset_msis() {
    std::vector<std::pair<std::string, SonarConfig>> matrix;
    for (auto [fov_az, fov_el] : {std::pair{3.0, 35.0}, std::pair{2.0, 20.0}}) {
        for (int bins : {500, 1000}) {
            SonarConfig c = msis_config(bins, fov_az, fov_el);
            matrix.emplace_back(setup_label(c), c);
        }
    }
    return matrix;
}

BenchmarkReport run_benchmark(const std::vector<std::pair<std::string, SonarConfig>>& matrix,
                              int n_samples, std::uint64_t seed) {
    BenchmarkReport report;
    report.n_samples = n_samples;
    report.seed = seed;
    for (const auto& [label, config] : matrix) {
        BenchmarkRow row;
        row.label = label;
        row.config = config;
        row.n_samples = n_samples;

        FrustumSpec frustum{config.range_min, config.range_max, config.fov_azimuth,
                            config.fov_elevation};
        double sum = 0.0;
        double sum_sq = 0.0;
        for (int s = 0; s < n_samples; ++s) {
            // Scene seeds depend only on (seed, sample), so configurations
            // sharing a field of view see identical scene sequences.
            const Scene scene =
                random_benchmark_scene(derive_key(seed, static_cast<std::uint64_t>(s)),
                                       frustum);
            SimulationOptions options;
            options.frame_index = static_cast<std::uint64_t>(s);
            const auto t0 = Clock::now();
            SimulationRun run = simulate_frame(scene, config, options);
            const double ms = ms_since(t0);
            sum += ms;
            sum_sq += ms * ms;
            row.stats += run.stats;
        }
        row.avg_ms = sum / n_samples;
        const double var =
            n_samples > 1 ? std::max(0.0, (sum_sq - sum * sum / n_samples) / (n_samples - 1))
                          : 0.0;
        row.std_ms = std::sqrt(var);
        row.fps = row.avg_ms > 0.0 ? 1000.0 / row.avg_ms : 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

AblationResult run_ablation(const Scene& scene, const SonarConfig& config,
                            const SimulationOptions& options) {
    config.validate();
    const SonarCamera camera = make_camera(config, options);
    GBuffer gbuffer = rasterize(scene, camera);
    gbuffer = perturb_normals(gbuffer, scene.materials, config.noise.seed);

    AblationResult result;
    auto t0 = Clock::now();
    const TraceResult selective = secondary_reflections(gbuffer, scene, camera);
    result.selective_ms = ms_since(t0);

    t0 = Clock::now();
    const TraceResult brute = secondary_reflections_brute_force(gbuffer, scene, camera);
    result.brute_force_ms = ms_since(t0);

    result.selective = selective.stats;
    result.brute_force = brute.stats;
    for (std::size_t i = 0; i < selective.image.size(); ++i) {
        const double ds = selective.image.distance[i];
        const double db = brute.image.distance[i];
        if (ds == kNoSample && db == kNoSample) continue;
        if (ds == kNoSample || db == kNoSample) {
            result.max_distance_diff = std::numeric_limits<double>::infinity();
            result.max_intensity_diff = std::numeric_limits<double>::infinity();
            continue;
        }
        result.max_distance_diff = std::max(result.max_distance_diff, std::abs(ds - db));
        result.max_intensity_diff =
            std::max(result.max_intensity_diff,
                     std::abs(selective.image.intensity[i] - brute.image.intensity[i]));
    }
    return result;
}

std::string format_report(const BenchmarkReport& report) {
    std::ostringstream oss;
    oss << "# sonarsim benchmark: " << report.n_samples
        << " samples per configuration, seed " << report.seed << "\n";
    oss << "# columns: device beams bins fov_az_deg fov_el_deg avg_ms std_ms fps "
           "rays_launched box_tests triangle_tests skipped_by_box\n";
    for (const BenchmarkRow& row : report.rows) {
        const SonarConfig& c = row.config;
        oss << (c.device == DeviceKind::FLS ? "fls" : "msis") << " " << c.n_beams << " "
            << c.n_bins << " " << std::lround(c.fov_azimuth * 180.0 / M_PI) << " "
            << std::lround(c.fov_elevation * 180.0 / M_PI) << " " << row.avg_ms << " "
            << row.std_ms << " " << row.fps << " " << row.stats.rays_launched << " "
            << row.stats.box_tests << " " << row.stats.triangle_tests << " "
            << row.stats.triangle_tests_skipped_by_box << "\n";
    }
    return oss.str();
}

std::string format_ablation(const AblationResult& r) {
    std::ostringstream oss;
    oss << "# ablation: selective+AABB vs brute force\n";
    oss << "selective_ms " << r.selective_ms << "\n";
    oss << "brute_force_ms " << r.brute_force_ms << "\n";
    oss << "speedup " << (r.selective_ms > 0.0 ? r.brute_force_ms / r.selective_ms : 0.0)
        << "\n";
    oss << "selective_triangle_tests " << r.selective.triangle_tests << "\n";
    oss << "brute_force_triangle_tests " << r.brute_force.triangle_tests << "\n";
    oss << "triangle_tests_skipped_by_box " << r.selective.triangle_tests_skipped_by_box
        << "\n";
    oss << "max_intensity_diff " << r.max_intensity_diff << "\n";
    oss << "max_distance_diff " << r.max_distance_diff << "\n";
    return oss.str();
}

}  // namespace sonarsim
