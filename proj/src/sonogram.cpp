#include "sonarsim/sonogram.hpp"

#include "sonarsim/errors.hpp"
#include "sonarsim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace sonarsim {

void SonarConfig::validate() const {
    if (n_beams < 1) throw ValidationError("config: n_beams must be >= 1");
    if (n_bins < 1) throw ValidationError("config: n_bins must be >= 1");
    if (device == DeviceKind::MSIS && n_beams != 1) {
        throw ValidationError("config: MSIS devices have exactly 1 beam");
    }
    if (!(fov_azimuth > 0.0 && fov_azimuth < M_PI)) {
        throw ValidationError("config: fov_azimuth must be in (0, pi)");
    }
    if (!(fov_elevation > 0.0 && fov_elevation < M_PI)) {
        throw ValidationError("config: fov_elevation must be in (0, pi)");
    }
    if (!(range_min > 0.0 && range_min < range_max)) {
        throw ValidationError("config: requires 0 < range_min < range_max");
    }
    if (!(frequency > 0.0)) throw ValidationError("config: frequency must be > 0");
    if (!(sigmoid.gain > 0.0)) throw ValidationError("config: sigmoid gain must be > 0");
    if (noise.sigma_mult < 0.0 || noise.sigma_add < 0.0) {
        throw ValidationError("config: noise sigmas must be >= 0");
    }
    if (device == DeviceKind::MSIS && !(msis_step > 0.0)) {
        throw ValidationError("config: msis_step must be > 0");
    }
    water.validate();
}

std::vector<std::pair<int, int>> beam_sections(int image_width, int n_beams) {
    if (n_beams < 1 || image_width < n_beams) {
        throw ValidationError("beam_sections: image width must be >= number of beams");
    }
    std::vector<std::pair<int, int>> sections;
    sections.reserve(static_cast<std::size_t>(n_beams));
    const int base = image_width / n_beams;
    const int remainder = image_width % n_beams;
    int start = 0;
    for (int b = 0; b < n_beams; ++b) {
        const int width = base + (b < remainder ? 1 : 0);
        sections.emplace_back(start, start + width);
        start += width;
    }
    return sections;
}

std::vector<std::vector<double>> distance_histogram(const std::vector<EchoSample>& samples,
                                                    int n_bins, double range_min,
                                                    double range_max) {
    if (!(range_min < range_max)) {
        throw ValidationError("distance_histogram: range_min must be < range_max");
    }
    std::vector<std::vector<double>> bins(static_cast<std::size_t>(n_bins));
    const double inv_span = 1.0 / (range_max - range_min);
    for (const EchoSample& s : samples) {
        if (s.distance < range_min || s.distance > range_max) continue;
        int bin = static_cast<int>(std::floor((s.distance - range_min) * inv_span * n_bins));
        bin = std::min(bin, n_bins - 1);  // d == range_max lands in the last bin
        bins[static_cast<std::size_t>(bin)].push_back(s.intensity);
    }
    return bins;
}

double sigmoid(double x, const SigmoidParams& params) {
    return 1.0 / (1.0 + std::exp(-params.gain * (x - params.center)));
}

double energy_normalization(const std::vector<double>& bin_samples,
                            const SigmoidParams& params) {
    if (bin_samples.empty()) return 0.0;
    double sum = 0.0;
    for (double i : bin_samples) sum += sigmoid(i, params);
    return sum / static_cast<double>(bin_samples.size());
}

SonarFrame apply_speckle(const SonarFrame& frame, const NoiseParams& noise,
                         std::uint64_t frame_index, int n_threads) {
    SonarFrame out = frame;
    if (noise.sigma_mult == 0.0 && noise.sigma_add == 0.0) return out;

    const std::uint64_t frame_key = derive_key(noise.seed, 0x737065636b6c65ull, frame_index);
    const int n_bins = frame.n_bins;
    auto process_beams = [&](int beam_begin, int beam_end) {
        for (int beam = beam_begin; beam < beam_end; ++beam) {
            for (int bin = 0; bin < n_bins; ++bin) {
                const std::uint64_t key =
                    derive_key(frame_key, static_cast<std::uint64_t>(beam),
                               static_cast<std::uint64_t>(bin));
                const double spread = 0.5 + static_cast<double>(bin) / n_bins;
                const double nm = 1.0 + noise.sigma_mult * spread * rng_gaussian(key, 0);
                const double na = noise.sigma_add * rng_gaussian(key, 1);
                const double value = out.at(beam, bin) * nm + na;
                out.at(beam, bin) = static_cast<float>(std::clamp(value, 0.0, 1.0));
            }
        }
    };

    n_threads = std::max(1, n_threads);
    if (n_threads == 1 || frame.n_beams < 2 * n_threads) {
        process_beams(0, frame.n_beams);
    } else {
        std::vector<std::thread> workers;
        const int chunk = (frame.n_beams + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const int lo = t * chunk;
            const int hi = std::min(frame.n_beams, lo + chunk);
            if (lo >= hi) break;
            workers.emplace_back(process_beams, lo, hi);
        }
        for (auto& w : workers) w.join();
    }
    return out;
}

SonarFrame build_frame(const ReflectionImage& shader, const SonarConfig& config,
                       std::uint64_t frame_index, bool apply_noise) {
    config.validate();
    if (shader.width < config.n_beams) {
        throw ValidationError("build_frame: shader image narrower than beam count");
    }

    SonarFrame frame;
    frame.device = config.device;
    frame.n_beams = config.n_beams;
    frame.n_bins = config.n_bins;
    frame.fov_azimuth = config.fov_azimuth;
    frame.fov_elevation = config.fov_elevation;
    frame.range_min = config.range_min;
    frame.range_max = config.range_max;
    frame.frequency = config.frequency;
    frame.timestamp = static_cast<double>(frame_index);
    frame.bearings.resize(static_cast<std::size_t>(config.n_beams));
    frame.intensities.assign(
        static_cast<std::size_t>(config.n_beams) * config.n_bins, 0.0f);

    const auto sections = beam_sections(shader.width, config.n_beams);
    const double tan_half_az = std::tan(config.fov_azimuth / 2.0);

    std::vector<EchoSample> samples;
    for (int beam = 0; beam < config.n_beams; ++beam) {
        const auto [col_begin, col_end] = sections[static_cast<std::size_t>(beam)];
        const double center = 0.5 * (col_begin + col_end);
        frame.bearings[static_cast<std::size_t>(beam)] =
            std::atan((2.0 * center / shader.width - 1.0) * tan_half_az);

        samples.clear();
        for (int row = 0; row < shader.height; ++row) {
            const std::size_t row_base = static_cast<std::size_t>(row) * shader.width;
            for (int col = col_begin; col < col_end; ++col) {
                const std::size_t i = row_base + col;
                if (shader.distance[i] != kNoSample) {
                    samples.push_back({shader.distance[i], shader.intensity[i]});
                }
                if (shader.has_secondary() && shader.echo2_distance[i] != kNoSample) {
                    samples.push_back({shader.echo2_distance[i], shader.echo2_intensity[i]});
                }
            }
        }
        const auto bins =
            distance_histogram(samples, config.n_bins, config.range_min, config.range_max);
        for (int bin = 0; bin < config.n_bins; ++bin) {
            frame.at(beam, bin) = static_cast<float>(
                energy_normalization(bins[static_cast<std::size_t>(bin)], config.sigmoid));
        }
    }

    if (apply_noise) {
        frame = apply_speckle(frame, config.noise, frame_index);
    }
    return frame;
}

namespace {

double wrap_two_pi(double angle) {
    angle = std::fmod(angle, 2.0 * M_PI);
    return angle < 0.0 ? angle + 2.0 * M_PI : angle;
}

}  // namespace

SonarFrame accumulate_msis_scan(const std::vector<SonarFrame>& frames, double step) {
    if (!(step > 0.0) || frames.empty()) {
        throw ValidationError("accumulate_msis_scan: needs frames and a positive step");
    }
    // Number of slots covering a revolution; a non-dividing step leaves the
    // last sector narrower than the others.
    const int n_slots = std::max(1, static_cast<int>(std::ceil(2.0 * M_PI / step - 1e-9)));

    const SonarFrame& first = frames.front();
    SonarFrame mosaic;
    mosaic.device = DeviceKind::MSIS;
    mosaic.n_beams = n_slots;
    mosaic.n_bins = first.n_bins;
    mosaic.fov_azimuth = 2.0 * M_PI;
    mosaic.fov_elevation = first.fov_elevation;
    mosaic.range_min = first.range_min;
    mosaic.range_max = first.range_max;
    mosaic.frequency = first.frequency;
    mosaic.timestamp = frames.back().timestamp;
    mosaic.bearings.resize(static_cast<std::size_t>(n_slots));
    for (int i = 0; i < n_slots; ++i) {
        mosaic.bearings[static_cast<std::size_t>(i)] = i * step;
    }
    mosaic.intensities.assign(static_cast<std::size_t>(n_slots) * first.n_bins, 0.0f);

    for (const SonarFrame& frame : frames) {
        if (frame.n_beams != 1 || frame.n_bins != first.n_bins) {
            throw ValidationError("accumulate_msis_scan: frames must be single-beam "
                                  "with a common bin count");
        }
        const double bearing = wrap_two_pi(frame.bearings.at(0));
        int slot = static_cast<int>(std::llround(bearing / step)) % n_slots;
        if (slot < 0) slot += n_slots;
        for (int bin = 0; bin < first.n_bins; ++bin) {
            mosaic.at(slot, bin) = frame.at(0, bin);
        }
    }
    return mosaic;
}

AcousticImage frame_to_cartesian(const SonarFrame& frame, int out_width, int out_height) {
    if (out_width < 1 || out_height < 1) {
        throw ValidationError("frame_to_cartesian: output dimensions must be >= 1");
    }
    AcousticImage img;
    img.width = out_width;
    img.height = out_height;
    img.pixels.assign(static_cast<std::size_t>(out_width) * out_height, 0.0f);
    img.full_circle = frame.fov_azimuth > M_PI;

    if (img.full_circle) {
        img.apex_x = (out_width - 1) / 2.0;
        img.apex_y = (out_height - 1) / 2.0;
        img.scale = (std::min(out_width, out_height) - 1) / 2.0 / frame.range_max;
    } else {
        const double half_span = std::sin(frame.fov_azimuth / 2.0) * frame.range_max;
        img.apex_x = (out_width - 1) / 2.0;
        img.apex_y = out_height - 1.0;
        img.scale = std::min((out_height - 1.0) / frame.range_max,
                             (out_width - 1.0) / (2.0 * half_span));
    }

    const int n_beams = frame.n_beams;
    const int n_bins = frame.n_bins;
    const double bin_w = frame.bin_width();

    for (int y = 0; y < out_height; ++y) {
        for (int x = 0; x < out_width; ++x) {
            const double dx = (x - img.apex_x) / img.scale;   // lateral, m
            const double dy = (img.apex_y - y) / img.scale;   // forward, m
            const double r = std::hypot(dx, dy);
            if (r < frame.range_min || r > frame.range_max) continue;
            double theta = std::atan2(dx, dy);

            // Neighbouring beams and the interpolation weight between them.
            const auto& b = frame.bearings;
            int b0, b1;
            double wb;
            if (img.full_circle) {
                theta = wrap_two_pi(theta);
                if (n_beams == 1) {
                    b0 = b1 = 0;
                    wb = 0.0;
                } else if (theta < b.front() || theta >= b.back()) {
                    // Between the last and the first sample, across the wrap.
                    b0 = n_beams - 1;
                    b1 = 0;
                    const double gap = 2.0 * M_PI - b.back() + b.front();
                    const double ahead = theta >= b.back()
                                             ? theta - b.back()
                                             : theta + 2.0 * M_PI - b.back();
                    wb = gap > 0.0 ? ahead / gap : 0.0;
                } else {
                    const auto it = std::upper_bound(b.begin(), b.end(), theta);
                    const std::size_t j = static_cast<std::size_t>(it - b.begin()) - 1;
                    b0 = static_cast<int>(j);
                    b1 = b0 + 1;
                    wb = (theta - b[j]) / (b[j + 1] - b[j]);
                }
            } else {
                if (std::abs(theta) > frame.fov_azimuth / 2.0) continue;
                if (theta <= b.front()) {
                    b0 = b1 = 0;
                    wb = 0.0;
                } else if (theta >= b.back()) {
                    b0 = b1 = n_beams - 1;
                    wb = 0.0;
                } else {
                    const auto it = std::upper_bound(b.begin(), b.end(), theta);
                    const std::size_t j = static_cast<std::size_t>(it - b.begin()) - 1;
                    b0 = static_cast<int>(j);
                    b1 = b0 + 1;
                    wb = (theta - b[j]) / (b[j + 1] - b[j]);
                }
            }

            const double bin_f =
                std::clamp((r - frame.range_min) / bin_w - 0.5, 0.0, n_bins - 1.0);
            const int bin0 = static_cast<int>(bin_f);
            const double wr = bin_f - bin0;
            const int bin1 = std::min(bin0 + 1, n_bins - 1);

            const double value =
                (1.0 - wb) * ((1.0 - wr) * frame.at(b0, bin0) + wr * frame.at(b0, bin1)) +
                wb * ((1.0 - wr) * frame.at(b1, bin0) + wr * frame.at(b1, bin1));
            img.pixels[static_cast<std::size_t>(y) * out_width + x] =
                static_cast<float>(value);
        }
    }
    return img;
}

}  // namespace sonarsim
