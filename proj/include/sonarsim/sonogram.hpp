#pragma once

#include "sonarsim/acoustics.hpp"
#include "sonarsim/rasterizer.hpp"

#include <cstdint>
#include <utility>
#include <vector>

// Conversion of the shader image into sonar data: beam sectioning, distance
// histogram, energy normalization, speckle noise, MSIS scan accumulation and
// the fan-shaped Cartesian display.

namespace sonarsim {

enum class DeviceKind : std::uint32_t { FLS = 0, MSIS = 1 };

struct NoiseParams {
    double sigma_mult = 0.1;   // std of the multiplicative component (mean 1)
    double sigma_add = 0.02;   // std of the additive zero-mean component
    std::uint64_t seed = 0;
};

struct SigmoidParams {
    double gain = 12.0;   // k
    double center = 0.5;  // i0
};

struct SonarConfig {
    DeviceKind device = DeviceKind::FLS;
    int n_beams = 128;  // 1 for MSIS
    int n_bins = 500;
    double fov_azimuth = 120.0 * M_PI / 180.0;
    double fov_elevation = 20.0 * M_PI / 180.0;
    double range_min = 1.0;   // m
    double range_max = 20.0;  // m
    double frequency = 700.0; // kHz
    WaterProperties water;
    NoiseParams noise;
    SigmoidParams sigmoid;
    double msis_step = 1.8 * M_PI / 180.0;  // scan step, rad (MSIS only)

    void validate() const;
};

/// Polar acoustic data: n_beams x n_bins echo intensities in [0, 1].
struct SonarFrame {
    DeviceKind device = DeviceKind::FLS;
    int n_beams = 0;
    int n_bins = 0;
    double fov_azimuth = 0.0;
    double fov_elevation = 0.0;
    double range_min = 0.0;
    double range_max = 0.0;
    double frequency = 0.0;
    double timestamp = 0.0;           // deterministic frame index, s
    std::vector<double> bearings;     // per-beam azimuth, rad, strictly increasing
    std::vector<float> intensities;   // beam-major, n_beams * n_bins

    double bin_width() const { return (range_max - range_min) / n_bins; }
    float& at(int beam, int bin) {
        return intensities[static_cast<std::size_t>(beam) * n_bins + bin];
    }
    float at(int beam, int bin) const {
        return intensities[static_cast<std::size_t>(beam) * n_bins + bin];
    }
};

/// Fan-shaped Cartesian rendering of a polar frame.
struct AcousticImage {
    int width = 0;
    int height = 0;
    std::vector<float> pixels;   // row-major, background 0
    // Fan geometry: apex pixel position and pixels-per-meter scale.
    double apex_x = 0.0;
    double apex_y = 0.0;
    double scale = 1.0;
    bool full_circle = false;

    float at(int x, int y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
};

/// Partitions image columns into n_beams contiguous sections whose widths
/// differ by at most one column; the leftmost sections take the remainder.
std::vector<std::pair<int, int>> beam_sections(int image_width, int n_beams);

/// One (distance, intensity) sample of the shader image.
struct EchoSample {
    double distance = 0.0;
    double intensity = 0.0;
};

/// Groups samples into range bins: bin = floor((d - r_min) / span * n_bins);
/// d == range_max clamps into the last bin, anything outside is discarded.
std::vector<std::vector<double>> distance_histogram(const std::vector<EchoSample>& samples,
                                                    int n_bins, double range_min,
                                                    double range_max);

double sigmoid(double x, const SigmoidParams& params);

/// Mean of the sigmoid-mapped intensities of one bin; empty bins yield 0.
double energy_normalization(const std::vector<double>& bin_samples,
                            const SigmoidParams& params);

/// Speckle: I' = clamp(I * nm + na, 0, 1) with nm ~ N(1, sigma_mult * s(bin))
/// and na ~ N(0, sigma_add). The multiplicative spread grows linearly with
/// range, s(bin) = 0.5 + bin / n_bins. Draws are keyed on
/// (seed, frame_index, beam, bin), so the result is independent of iteration
/// order and worker count; each frame index is a fresh substream.
SonarFrame apply_speckle(const SonarFrame& frame, const NoiseParams& noise,
                         std::uint64_t frame_index = 0, int n_threads = 1);

/// Full CPU stage: beam sections -> per-beam distance histogram (primary and
/// attached secondary samples) -> energy normalization -> speckle. Bearings
/// are assigned at section centers. Set apply_noise = false to stop before
/// the speckle stage.
SonarFrame build_frame(const ReflectionImage& shader, const SonarConfig& config,
                       std::uint64_t frame_index = 0, bool apply_noise = true);

/// Mosaics successive single-beam frames, bearing-stamped by the scanning
/// head, into a full-revolution polar image of ceil(2 pi / step) beam slots.
/// Later frames overwrite earlier ones that land in the same slot.
SonarFrame accumulate_msis_scan(const std::vector<SonarFrame>& frames, double step);

/// Inverse-maps every output pixel into (r, theta) and bilinearly samples
/// the polar grid; pixels outside the fan keep the background value 0.
AcousticImage frame_to_cartesian(const SonarFrame& frame, int out_width, int out_height);

}  // namespace sonarsim
