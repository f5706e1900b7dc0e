#pragma once

#include "sonarsim/pipeline.hpp"

#include <cstdint>
#include <string>

// Run configuration shared by the CLI and its config files. Every command
// line flag has a config-file key of the same name; flags override the file.

namespace sonarsim {

struct RunConfig {
    std::string scene_path;
    SonarConfig sonar;
    SimulationOptions options;
    std::uint64_t seed = 0;
    double msis_step_deg = 1.8;
    std::string frame_out = "out.sf";
    std::string image_out = "out.pgm";
    int cartesian_width = 512;
    int cartesian_height = 512;
    int image_bits = 8;  // PGM sample depth, 8 or 16
    bool dump_shader = false;

    /// Applies `seed` to the noise stream and validates the device config.
    void finalize();
};

/// Reads a YAML config file into `config`, leaving absent keys untouched.
void apply_config_file(RunConfig& config, const std::string& path);

/// The effective configuration as a YAML document, echoed into command
/// output so every run is reproducible from its own header.
std::string echo_config(const RunConfig& config);

}  // namespace sonarsim
