#include "sonarsim/frame_io.hpp"

#include "sonarsim/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>

namespace sonarsim {

namespace {

constexpr std::array<char, 4> kMagic = {'S', 'F', 'R', 'M'};
constexpr std::uint32_t kVersion = 1;

// This codebase targets little-endian hosts; the on-disk layout is fixed
// little-endian, so plain memcpy round-trips.
template <typename T>
void put(std::string& buf, T value) {
    char raw[sizeof(T)];
    std::memcpy(raw, &value, sizeof(T));
    buf.append(raw, sizeof(T));
}

template <typename T>
T take(std::ifstream& in, const std::string& path) {
    char raw[sizeof(T)];
    if (!in.read(raw, sizeof(T))) {
        throw IoError("truncated frame file: " + path);
    }
    T value;
    std::memcpy(&value, raw, sizeof(T));
    return value;
}

}  // namespace

void save_frame(const SonarFrame& frame, const std::string& path) {
    std::string buf;
    buf.reserve(68 + frame.intensities.size() * sizeof(float));
    buf.append(kMagic.data(), kMagic.size());
    put<std::uint32_t>(buf, kVersion);
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(frame.device));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(frame.n_beams));
    put<std::uint32_t>(buf, static_cast<std::uint32_t>(frame.n_bins));
    put<double>(buf, frame.fov_azimuth);
    put<double>(buf, frame.fov_elevation);
    put<double>(buf, frame.range_min);
    put<double>(buf, frame.range_max);
    put<double>(buf, frame.frequency);
    put<double>(buf, frame.timestamp);
    for (float v : frame.intensities) put<float>(buf, v);

    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(buf.data(), static_cast<std::streamsize>(buf.size()))) {
        throw IoError("cannot write frame file: " + path);
    }
}

SonarFrame load_frame(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open frame file: " + path);
    }
    std::array<char, 4> magic;
    if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
        throw ValidationError("not a sonar frame file: " + path);
    }
    const auto version = take<std::uint32_t>(in, path);
    if (version != kVersion) {
        throw ValidationError("unsupported frame version " + std::to_string(version) +
                              ": " + path);
    }
    SonarFrame frame;
    const auto device = take<std::uint32_t>(in, path);
    if (device > 1) {
        throw ValidationError("bad device kind in frame file: " + path);
    }
    frame.device = static_cast<DeviceKind>(device);
    frame.n_beams = static_cast<int>(take<std::uint32_t>(in, path));
    frame.n_bins = static_cast<int>(take<std::uint32_t>(in, path));
    frame.fov_azimuth = take<double>(in, path);
    frame.fov_elevation = take<double>(in, path);
    frame.range_min = take<double>(in, path);
    frame.range_max = take<double>(in, path);
    frame.frequency = take<double>(in, path);
    frame.timestamp = take<double>(in, path);
    if (frame.n_beams < 1 || frame.n_bins < 1 ||
        static_cast<long long>(frame.n_beams) * frame.n_bins > (1ll << 28)) {
        throw ValidationError("implausible frame dimensions: " + path);
    }

    const std::size_t count =
        static_cast<std::size_t>(frame.n_beams) * static_cast<std::size_t>(frame.n_bins);
    frame.intensities.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        frame.intensities[i] = take<float>(in, path);
    }

    frame.bearings.resize(static_cast<std::size_t>(frame.n_beams));
    const bool wraps = frame.fov_azimuth > M_PI;
    for (int b = 0; b < frame.n_beams; ++b) {
        const double t = (b + 0.5) / frame.n_beams;
        frame.bearings[static_cast<std::size_t>(b)] =
            wraps ? t * frame.fov_azimuth
                  : (t - 0.5) * frame.fov_azimuth;
    }
    return frame;
}

void save_pgm(const std::vector<float>& pixels, int width, int height,
              const std::string& path, int bit_depth) {
    if (bit_depth != 8 && bit_depth != 16) {
        throw ValidationError("save_pgm: bit depth must be 8 or 16");
    }
    if (width < 1 || height < 1 ||
        pixels.size() != static_cast<std::size_t>(width) * height) {
        throw ValidationError("save_pgm: pixel buffer does not match dimensions");
    }
    const int maxval = bit_depth == 8 ? 255 : 65535;
    std::string buf = "P5\n" + std::to_string(width) + " " + std::to_string(height) +
                      "\n" + std::to_string(maxval) + "\n";
    for (float v : pixels) {
        const double clamped = std::clamp(static_cast<double>(v), 0.0, 1.0);
        const unsigned q = static_cast<unsigned>(std::lround(clamped * maxval));
        if (bit_depth == 8) {
            buf.push_back(static_cast<char>(q));
        } else {
            // PGM stores 16-bit samples most significant byte first.
            buf.push_back(static_cast<char>(q >> 8));
            buf.push_back(static_cast<char>(q & 0xff));
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !out.write(buf.data(), static_cast<std::streamsize>(buf.size()))) {
        throw IoError("cannot write image file: " + path);
    }
}

}  // namespace sonarsim
