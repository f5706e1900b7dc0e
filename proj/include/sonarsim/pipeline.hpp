#pragma once

#include "sonarsim/raytracer.hpp"
#include "sonarsim/scene.hpp"
#include "sonarsim/sonogram.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

// End-to-end orchestration: scene + config -> rasterize -> perturb ->
// primary -> secondary -> unify -> attenuate -> sonogram, plus the
// random-scene benchmark loop and the culling ablation.

namespace sonarsim {

struct SimulationOptions {
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
    std::uint64_t frame_index = 0;
    bool secondary = true;
    bool attenuation = true;
    bool noise = true;
    int image_width = 0;   // 0: 2 * n_beams (at least 16)
    int image_height = 0;  // 0: keep the field-of-view aspect ratio
};

struct SimulationRun {
    SonarFrame frame;
    ReflectionImage shader;   // unified, attenuated
    GBuffer gbuffer;
    IntersectionStats stats;
    std::map<std::string, double> stage_ms;  // per-stage wall time
    double total_ms = 0.0;
};

/// Builds the render camera for a device config: pinhole with the sonar
/// field of view, shader target sized from the beam count unless overridden.
SonarCamera make_camera(const SonarConfig& config, const SimulationOptions& options);

/// Runs the full pipeline once. Deterministic in (scene, config, options).
SimulationRun simulate_frame(const Scene& scene, const SonarConfig& config,
                             const SimulationOptions& options = {});

struct BenchmarkRow {
    std::string label;
    SonarConfig config;
    int n_samples = 0;
    double avg_ms = 0.0;
    double std_ms = 0.0;
    double fps = 0.0;
    IntersectionStats stats;  // totals over all samples
};

struct BenchmarkReport {
    int n_samples = 0;
    std::uint64_t seed = 0;
    std::vector<BenchmarkRow> rows;
};

/// Benchmark configurations reproducing the evaluation protocol: FLS at
/// 128/256 beams x 500/1000 bins under 120x20 and 90x15 degree fields of
/// view; MSIS at 500/1000 bins under 3x35 and 2x20 degrees.
std::vector<std::pair<std::string, SonarConfig>> benchmark_preset_fls();
std::vector<std::pair<std::string, SonarConfig>> benchmark_preset_msis();

/// Times simulate_frame over n_samples random four-primitive scenes per
/// configuration. Scene sequences are seed-paired across configurations.
BenchmarkReport run_benchmark(const std::vector<std::pair<std::string, SonarConfig>>& matrix,
                              int n_samples = 500, std::uint64_t seed = 0);

struct AblationResult {
    double selective_ms = 0.0;
    double brute_force_ms = 0.0;
    IntersectionStats selective;
    IntersectionStats brute_force;
    double max_intensity_diff = 0.0;
    double max_distance_diff = 0.0;
};

/// Traces the same G-buffer with and without AABB culling and compares the
/// secondary images and work counters.
AblationResult run_ablation(const Scene& scene, const SonarConfig& config,
                            const SimulationOptions& options = {});

std::string format_report(const BenchmarkReport& report);
std::string format_ablation(const AblationResult& result);

}  // namespace sonarsim
