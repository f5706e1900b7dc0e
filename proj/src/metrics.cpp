#include "sonarsim/metrics.hpp"

#include "sonarsim/errors.hpp"

#include <algorithm>
#include <cmath>

namespace sonarsim {

MetricGrid MetricGrid::from_frame(const SonarFrame& frame) {
    MetricGrid g;
    g.rows = frame.n_beams;
    g.cols = frame.n_bins;
    g.values.assign(frame.intensities.begin(), frame.intensities.end());
    return g;
}

MetricGrid MetricGrid::constant(int rows, int cols, double value) {
    return {rows, cols, std::vector<double>(static_cast<std::size_t>(rows) * cols, value)};
}

namespace {

void require_same_shape(const MetricGrid& a, const MetricGrid& b) {
    if (a.rows != b.rows || a.cols != b.cols) {
        throw ValidationError("metrics: image dimensions differ");
    }
    if (a.rows < 1 || a.cols < 1) {
        throw ValidationError("metrics: empty image");
    }
}

double mean_squared_error(const MetricGrid& a, const MetricGrid& b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        sum += d * d;
    }
    return sum / static_cast<double>(a.values.size());
}

std::vector<double> gaussian_kernel() {
    std::vector<double> k(kSsimWindow);
    const double half = (kSsimWindow - 1) / 2.0;
    double sum = 0.0;
    for (int i = 0; i < kSsimWindow; ++i) {
        const double x = i - half;
        k[static_cast<std::size_t>(i)] = std::exp(-x * x / (2.0 * kSsimSigma * kSsimSigma));
        sum += k[static_cast<std::size_t>(i)];
    }
    for (double& v : k) v /= sum;
    return k;
}

// Separable valid-region convolution with the SSIM window.
MetricGrid blur_valid(const MetricGrid& in) {
    static const std::vector<double> kernel = gaussian_kernel();
    const int w = kSsimWindow;
    MetricGrid tmp;  // convolve rows
    tmp.rows = in.rows;
    tmp.cols = in.cols - w + 1;
    tmp.values.resize(static_cast<std::size_t>(tmp.rows) * tmp.cols);
    for (int r = 0; r < in.rows; ++r) {
        for (int c = 0; c < tmp.cols; ++c) {
            double s = 0.0;
            for (int k = 0; k < w; ++k) s += kernel[static_cast<std::size_t>(k)] * in.at(r, c + k);
            tmp.values[static_cast<std::size_t>(r) * tmp.cols + c] = s;
        }
    }
    MetricGrid out;  // convolve columns
    out.rows = in.rows - w + 1;
    out.cols = tmp.cols;
    out.values.resize(static_cast<std::size_t>(out.rows) * out.cols);
    for (int r = 0; r < out.rows; ++r) {
        for (int c = 0; c < out.cols; ++c) {
            double s = 0.0;
            for (int k = 0; k < w; ++k) s += kernel[static_cast<std::size_t>(k)] * tmp.at(r + k, c);
            out.values[static_cast<std::size_t>(r) * out.cols + c] = s;
        }
    }
    return out;
}

MetricGrid hadamard(const MetricGrid& a, const MetricGrid& b) {
    MetricGrid out = a;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= b.values[i];
    return out;
}

struct SsimMeans {
    double ssim = 0.0;  // mean over windows of the full l * cs product
    double cs = 0.0;    // mean over windows of the contrast-structure term
};

SsimMeans windowed_ssim(const MetricGrid& a, const MetricGrid& b) {
    if (a.rows < kSsimWindow || a.cols < kSsimWindow) {
        throw ValidationError("ssim: image sides must be >= " +
                              std::to_string(kSsimWindow) + " px");
    }
    constexpr double c1 = kSsimK1 * kSsimK1;  // (k1 L)^2 with L = 1
    constexpr double c2 = kSsimK2 * kSsimK2;

    const MetricGrid mu_a = blur_valid(a);
    const MetricGrid mu_b = blur_valid(b);
    const MetricGrid raw_aa = blur_valid(hadamard(a, a));
    const MetricGrid raw_bb = blur_valid(hadamard(b, b));
    const MetricGrid raw_ab = blur_valid(hadamard(a, b));

    double ssim_sum = 0.0;
    double cs_sum = 0.0;
    for (std::size_t i = 0; i < mu_a.values.size(); ++i) {
        const double ma = mu_a.values[i];
        const double mb = mu_b.values[i];
        const double var_a = raw_aa.values[i] - ma * ma;
        const double var_b = raw_bb.values[i] - mb * mb;
        const double cov = raw_ab.values[i] - ma * mb;
        const double lum = (2.0 * ma * mb + c1) / (ma * ma + mb * mb + c1);
        const double cs = (2.0 * cov + c2) / (var_a + var_b + c2);
        ssim_sum += lum * cs;
        cs_sum += cs;
    }
    const double n = static_cast<double>(mu_a.values.size());
    return {ssim_sum / n, cs_sum / n};
}

}  // namespace

double mse_similarity(const MetricGrid& a, const MetricGrid& b) {
    require_same_shape(a, b);
    return std::clamp(1.0 - mean_squared_error(a, b), 0.0, 1.0);
}

double psnr_similarity(const MetricGrid& a, const MetricGrid& b) {
    require_same_shape(a, b);
    const double mse = mean_squared_error(a, b);
    if (mse == 0.0) return 1.0;
    const double psnr_db = 10.0 * std::log10(1.0 / mse);
    return std::clamp(psnr_db / kPsnrCapDb, 0.0, 1.0);
}

double ssim(const MetricGrid& a, const MetricGrid& b) {
    require_same_shape(a, b);
    double s = windowed_ssim(a, b).ssim;
    if (s < 0.0) s = (s + 1.0) / 2.0;
    return std::clamp(s, 0.0, 1.0);
}

double ms_ssim(const MetricGrid& a, const MetricGrid& b,
               const std::vector<double>& weights) {
    require_same_shape(a, b);
    int scales = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] != 0.0) scales = static_cast<int>(i) + 1;
    }
    if (scales == 0) {
        throw ValidationError("ms_ssim: weight vector has no nonzero entry");
    }
    const int required = kSsimWindow << (scales - 1);
    if (std::min(a.rows, a.cols) < required) {
        throw ValidationError("ms_ssim: with " + std::to_string(scales) +
                              " scales both image sides must be >= " +
                              std::to_string(required) + " px");
    }

    auto downsample = [](const MetricGrid& g) {
        MetricGrid out;
        out.rows = g.rows / 2;
        out.cols = g.cols / 2;
        out.values.resize(static_cast<std::size_t>(out.rows) * out.cols);
        for (int r = 0; r < out.rows; ++r) {
            for (int c = 0; c < out.cols; ++c) {
                out.values[static_cast<std::size_t>(r) * out.cols + c] =
                    0.25 * (g.at(2 * r, 2 * c) + g.at(2 * r + 1, 2 * c) +
                            g.at(2 * r, 2 * c + 1) + g.at(2 * r + 1, 2 * c + 1));
            }
        }
        return out;
    };

    MetricGrid ga = a;
    MetricGrid gb = b;
    double product = 1.0;
    for (int scale = 0; scale < scales; ++scale) {
        if (scale > 0) {
            ga = downsample(ga);
            gb = downsample(gb);
        }
        const SsimMeans means = windowed_ssim(ga, gb);
        const bool last = scale == scales - 1;
        // Negative terms are clamped; a fractional power of a negative mean
        // is undefined.
        const double term = std::max(0.0, last ? means.ssim : means.cs);
        product *= std::pow(term, weights[static_cast<std::size_t>(scale)]);
    }
    return std::clamp(product, 0.0, 1.0);
}

SimilarityReport compare_grids(const MetricGrid& a, const MetricGrid& b) {
    SimilarityReport report;
    report.mse_similarity = mse_similarity(a, b);
    report.psnr_similarity = psnr_similarity(a, b);
    report.ssim = ssim(a, b);
    report.ms_ssim = ms_ssim(a, b);
    return report;
}

}  // namespace sonarsim
