#include "sonarsim/pipeline.hpp"

#include "sonarsim/rng.hpp"
#include "testutil.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace sonarsim;
using namespace sonarsim::testutil;

TEST_CASE("empty scene simulates to an all-zero frame") {
    SonarConfig config = basic_fls_config();
    SimulationOptions options;
    options.noise = false;
    const SimulationRun run = simulate_frame(Scene{}, config, options);
    for (float v : run.frame.intensities) CHECK(v == 0.0f);
    CHECK(run.stats.rays_launched == 0);
}

TEST_CASE("wall scene puts its energy into the predicted bin") {
    SonarConfig config = basic_fls_config();
    // Keep the wall's geometric depth spread (edge pixels sit farther than
    // the axis) within the +-1 bin window.
    config.n_bins = 50;
    SimulationOptions options;
    options.noise = false;
    options.attenuation = false;
    const double d = 12.4;
    const SimulationRun run = simulate_frame(wall_scene(d, 50.0), config, options);
    const int predicted = static_cast<int>(std::floor(
        (d - config.range_min) / (config.range_max - config.range_min) * config.n_bins));
    double total = 0.0;
    double in_window = 0.0;
    for (int beam = 0; beam < config.n_beams; ++beam) {
        for (int bin = 0; bin < config.n_bins; ++bin) {
            total += run.frame.at(beam, bin);
            if (std::abs(bin - predicted) <= 1) in_window += run.frame.at(beam, bin);
        }
    }
    REQUIRE(total > 0.0);
    CHECK(in_window / total > 0.95);
}

TEST_CASE("simulation is bit-deterministic in (scene, config, seed)") {
    SonarConfig config = basic_fls_config();
    config.noise.sigma_mult = 0.1;
    config.noise.sigma_add = 0.02;
    config.noise.seed = 99;
    const Scene scene = random_benchmark_scene(4, FrustumSpec{1, 20, config.fov_azimuth,
                                                              config.fov_elevation});
    const SimulationRun a = simulate_frame(scene, config);
    const SimulationRun b = simulate_frame(scene, config);
    CHECK(a.frame.intensities == b.frame.intensities);
    CHECK(a.frame.bearings == b.frame.bearings);
}

TEST_CASE("stage timings sum close to the measured total") {
    const Scene scene = random_benchmark_scene(1);
    SonarConfig config;
    const SimulationRun run = simulate_frame(scene, config);
    double stage_sum = 0.0;
    for (const auto& [name, ms] : run.stage_ms) {
        CHECK(ms >= 0.0);
        stage_sum += ms;
    }
    CHECK(stage_sum <= run.total_ms * 1.05 + 0.5);
}

TEST_CASE("secondary toggle changes only multipath content") {
    SonarConfig config = basic_fls_config();
    SimulationOptions with_secondary;
    with_secondary.noise = false;
    SimulationOptions without_secondary = with_secondary;
    without_secondary.secondary = false;

    const Scene scene = random_benchmark_scene(17, FrustumSpec{1, 20, config.fov_azimuth,
                                                               config.fov_elevation});
    const SimulationRun with_run = simulate_frame(scene, config, with_secondary);
    const SimulationRun without_run = simulate_frame(scene, config, without_secondary);
    CHECK(without_run.stats.rays_launched == 0);
    CHECK(with_run.stats.rays_launched > 0);
    // The primary plane is identical either way.
    for (std::size_t i = 0; i < with_run.shader.size(); ++i) {
        CHECK(with_run.shader.distance[i] == without_run.shader.distance[i]);
        CHECK(with_run.shader.intensity[i] == without_run.shader.intensity[i]);
    }
}

TEST_CASE("run_benchmark with one sample reports zero deviation") {
    auto matrix = benchmark_preset_msis();
    matrix.resize(1);
    const BenchmarkReport report = run_benchmark(matrix, 1, 5);
    REQUIRE(report.rows.size() == 1);
    CHECK(report.rows[0].std_ms == 0.0);
    CHECK(report.rows[0].n_samples == 1);
    CHECK(report.rows[0].avg_ms > 0.0);
    CHECK(report.rows[0].fps == doctest::Approx(1000.0 / report.rows[0].avg_ms));
}

TEST_CASE("benchmark presets match the published setup matrix") {
    const auto fls = benchmark_preset_fls();
    REQUIRE(fls.size() == 8);
    for (const auto& [label, config] : fls) {
        CHECK(config.device == DeviceKind::FLS);
        CHECK((config.n_beams == 128 || config.n_beams == 256));
        CHECK((config.n_bins == 500 || config.n_bins == 1000));
        const double az_deg = config.fov_azimuth * 180.0 / M_PI;
        const double el_deg = config.fov_elevation * 180.0 / M_PI;
        const bool wide = std::abs(az_deg - 120.0) < 1e-9 && std::abs(el_deg - 20.0) < 1e-9;
        const bool narrow = std::abs(az_deg - 90.0) < 1e-9 && std::abs(el_deg - 15.0) < 1e-9;
        CHECK((wide || narrow));
    }

    const auto msis = benchmark_preset_msis();
    REQUIRE(msis.size() == 4);
    for (const auto& [label, config] : msis) {
        CHECK(config.device == DeviceKind::MSIS);
        CHECK(config.n_beams == 1);
        CHECK((config.n_bins == 500 || config.n_bins == 1000));
    }
}

TEST_CASE("ablation: equivalence and counter bookkeeping") {
    SonarConfig config;
    config.noise.sigma_mult = 0.0;
    config.noise.sigma_add = 0.0;
    const Scene scene = random_benchmark_scene(23);
    const AblationResult result = run_ablation(scene, config);
    CHECK(result.max_intensity_diff <= 1e-6);
    CHECK(result.max_distance_diff <= 1e-4);
    CHECK(result.selective.triangle_tests <= result.brute_force.triangle_tests);
    CHECK(result.selective.rays_launched == result.brute_force.rays_launched);

    const AblationResult empty = run_ablation(Scene{}, config);
    CHECK(empty.selective.rays_launched == 0);
    CHECK(empty.brute_force.rays_launched == 0);
}

TEST_CASE("clustered geometry is culled hard") {
    // Everything sits inside one small box far off to the side, so most
    // reflected rays skip it entirely.
    Scene scene;
    scene.materials.push_back({1.0, 0.0});
    PrimitiveParams p;
    p.size = {0.5, 0.5, 0.5};
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.translate(Eigen::Vector3d(6.0, 2.5, 0.0));
    TriMesh box = tessellate_primitive(PrimitiveKind::Box, p);
    scene.add_object(transform_mesh(box, pose), "box");
    // A wall so that plenty of rays are launched.
    Scene wall = wall_scene(10.0, 40.0);
    wall.objects[0].mesh.material_id = 0;
    scene.objects.push_back(wall.objects[0]);

    SonarConfig config;
    const AblationResult result = run_ablation(scene, config);
    CHECK(result.selective.triangle_tests * 2 < result.brute_force.triangle_tests);
}

TEST_CASE("attenuation on the cone scene dims far returns more than near ones") {
    // Cone viewed along its side so the hit pixels span a range of depths.
    Scene scene;
    scene.materials.push_back({1.0, 0.0});
    PrimitiveParams p;
    p.radius = 1.5;
    p.height = 4.0;
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    pose.translate(Eigen::Vector3d(9.0, 0.0, -1.0));
    pose.rotate(Eigen::AngleAxisd(-M_PI / 2, Eigen::Vector3d::UnitY()));
    TriMesh cone = tessellate_primitive(PrimitiveKind::Cone, p, 24);
    scene.add_object(transform_mesh(cone, pose), "cone");

    SonarConfig config = basic_fls_config();
    SimulationOptions options;
    options.noise = false;
    options.attenuation = false;
    const SimulationRun raw = simulate_frame(scene, config, options);

    const double alpha = 0.013;  // dB/km
    const ReflectionImage attenuated = apply_attenuation(raw.shader, db_to_neper(alpha));

    std::vector<std::pair<double, double>> ratios;  // (distance, attenuated/raw)
    for (std::size_t i = 0; i < raw.shader.size(); ++i) {
        if (raw.shader.distance[i] == kNoSample || raw.shader.intensity[i] <= 0.0) continue;
        ratios.emplace_back(raw.shader.distance[i],
                            attenuated.intensity[i] / raw.shader.intensity[i]);
    }
    REQUIRE(ratios.size() > 100);
    std::sort(ratios.begin(), ratios.end());
    const std::size_t half = ratios.size() / 2;
    double near_mean = 0.0;
    double far_mean = 0.0;
    for (std::size_t i = 0; i < half; ++i) near_mean += ratios[i].second;
    for (std::size_t i = half; i < ratios.size(); ++i) far_mean += ratios[i].second;
    near_mean /= half;
    far_mean /= static_cast<double>(ratios.size() - half);
    CHECK(far_mean < near_mean);
}
