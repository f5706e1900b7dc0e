#pragma once

#include "sonarsim/sonogram.hpp"

#include <vector>

// Image-similarity metrics over polar intensity grids, each normalized so
// zero is minimum similarity and one is maximum correlation.

namespace sonarsim {

/// Row-major intensity grid in [0, 1]; rows are beams for polar frames.
struct MetricGrid {
    int rows = 0;
    int cols = 0;
    std::vector<double> values;

    static MetricGrid from_frame(const SonarFrame& frame);
    static MetricGrid constant(int rows, int cols, double value);
    double at(int r, int c) const {
        return values[static_cast<std::size_t>(r) * cols + c];
    }
};

struct SimilarityReport {
    double mse_similarity = 0.0;
    double psnr_similarity = 0.0;
    double ssim = 0.0;
    double ms_ssim = 0.0;
};

/// PSNR values map onto [0, 1] as clamp(psnr_db / kPsnrCapDb, 0, 1).
inline constexpr double kPsnrCapDb = 100.0;

/// SSIM stabilizers and window, after the usual reference implementation:
/// 11-tap Gaussian window with sigma 1.5, k1 = 0.01, k2 = 0.03, L = 1.
inline constexpr int kSsimWindow = 11;
inline constexpr double kSsimSigma = 1.5;
inline constexpr double kSsimK1 = 0.01;
inline constexpr double kSsimK2 = 0.03;

/// Standard five-scale exponent weights.
inline constexpr double kMsSsimWeights[5] = {0.0448, 0.2856, 0.3001, 0.2363, 0.1333};

/// 1 - mean squared error; the maximum possible MSE on [0, 1] data is 1.
double mse_similarity(const MetricGrid& a, const MetricGrid& b);

/// PSNR = 10 log10(1 / MSE) mapped through kPsnrCapDb; identical images
/// (MSE = 0) score 1.
double psnr_similarity(const MetricGrid& a, const MetricGrid& b);

/// Mean windowed SSIM. The mean lies in [-1, 1]; a negative mean is mapped
/// through (s + 1) / 2, otherwise the value is reported directly.
double ssim(const MetricGrid& a, const MetricGrid& b);

/// Multi-scale SSIM with dyadic 2x2-mean downsampling. The number of scales
/// is the index of the last nonzero weight, so the weight vector {1}
/// (or {1, 0, 0, 0, 0}) degenerates to single-scale SSIM. Requires
/// min(rows, cols) >= kSsimWindow * 2^(scales-1).
double ms_ssim(const MetricGrid& a, const MetricGrid& b,
               const std::vector<double>& weights = {
                   kMsSsimWeights[0], kMsSsimWeights[1], kMsSsimWeights[2],
                   kMsSsimWeights[3], kMsSsimWeights[4]});

SimilarityReport compare_grids(const MetricGrid& a, const MetricGrid& b);

}  // namespace sonarsim
