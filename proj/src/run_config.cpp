#include "sonarsim/run_config.hpp"

#include "sonarsim/errors.hpp"

#include <yaml-cpp/yaml.h>

#include <fstream>
#include <sstream>

namespace sonarsim {

void RunConfig::finalize() {
    sonar.noise.seed = seed;
    if (sonar.device == DeviceKind::MSIS) {
        sonar.msis_step = msis_step_deg * M_PI / 180.0;
    }
    sonar.validate();
}

namespace {

template <typename T>
void read(const YAML::Node& node, const char* key, T& into) {
    if (const YAML::Node v = node[key]) {
        try {
            into = v.as<T>();
        } catch (const YAML::Exception&) {
            throw ValidationError(std::string("config: field '") + key +
                                  "' has the wrong type");
        }
    }
}

void read_deg(const YAML::Node& node, const char* key, double& radians) {
    double deg = radians * 180.0 / M_PI;
    read(node, key, deg);
    radians = deg * M_PI / 180.0;
}

}  // namespace

void apply_config_file(RunConfig& config, const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }
    YAML::Node root;
    try {
        root = YAML::Load(in);
    } catch (const YAML::ParserException& e) {
        throw ValidationError("config: " + path + ": " + e.what());
    }

    std::string device;
    read(root, "device", device);
    if (!device.empty()) {
        if (device == "fls") {
            config.sonar.device = DeviceKind::FLS;
        } else if (device == "msis") {
            config.sonar.device = DeviceKind::MSIS;
            config.sonar.n_beams = 1;
        } else {
            throw ValidationError("config: device must be 'fls' or 'msis', got '" +
                                  device + "'");
        }
    }
    read(root, "scene", config.scene_path);
    read(root, "beams", config.sonar.n_beams);
    read(root, "bins", config.sonar.n_bins);
    read_deg(root, "fov_azimuth_deg", config.sonar.fov_azimuth);
    read_deg(root, "fov_elevation_deg", config.sonar.fov_elevation);
    read(root, "range_min", config.sonar.range_min);
    read(root, "range_max", config.sonar.range_max);
    read(root, "frequency_khz", config.sonar.frequency);
    if (const YAML::Node water = root["water"]) {
        read(water, "temperature", config.sonar.water.temperature);
        read(water, "salinity", config.sonar.water.salinity);
        read(water, "ph", config.sonar.water.acidity);
        read(water, "depth_km", config.sonar.water.depth);
    }
    if (const YAML::Node noise = root["noise"]) {
        read(noise, "sigma_mult", config.sonar.noise.sigma_mult);
        read(noise, "sigma_add", config.sonar.noise.sigma_add);
    }
    if (const YAML::Node sig = root["sigmoid"]) {
        read(sig, "gain", config.sonar.sigmoid.gain);
        read(sig, "center", config.sonar.sigmoid.center);
    }
    read(root, "msis_step_deg", config.msis_step_deg);
    read(root, "seed", config.seed);
    read(root, "noise_enabled", config.options.noise);
    read(root, "attenuation", config.options.attenuation);
    read(root, "secondary", config.options.secondary);
    read(root, "dump_shader", config.dump_shader);
    read(root, "image_width", config.options.image_width);
    read(root, "image_height", config.options.image_height);
    read(root, "frame_out", config.frame_out);
    read(root, "image_out", config.image_out);
    read(root, "cartesian_width", config.cartesian_width);
    read(root, "cartesian_height", config.cartesian_height);
    read(root, "image_bits", config.image_bits);

    if (const YAML::Node pose = root["pose"]) {
        Eigen::Vector3d position = config.options.pose.translation();
        std::vector<double> p;
        read(pose, "position", p);
        if (p.size() == 3) position = {p[0], p[1], p[2]};
        std::vector<double> rpy_deg;
        read(pose, "rpy_deg", rpy_deg);
        Eigen::Isometry3d iso = Eigen::Isometry3d::Identity();
        iso.translate(position);
        if (rpy_deg.size() == 3) {
            iso.rotate(
                Eigen::AngleAxisd(rpy_deg[2] * M_PI / 180.0, Eigen::Vector3d::UnitZ()) *
                Eigen::AngleAxisd(rpy_deg[1] * M_PI / 180.0, Eigen::Vector3d::UnitY()) *
                Eigen::AngleAxisd(rpy_deg[0] * M_PI / 180.0, Eigen::Vector3d::UnitX()));
        } else {
            iso.linear() = config.options.pose.linear();
        }
        config.options.pose = iso;
    }
}

std::string echo_config(const RunConfig& c) {
    const double rad2deg = 180.0 / M_PI;
    std::ostringstream oss;
    oss << "# effective configuration\n";
    oss << "device: " << (c.sonar.device == DeviceKind::FLS ? "fls" : "msis") << "\n";
    oss << "scene: " << c.scene_path << "\n";
    oss << "beams: " << c.sonar.n_beams << "\n";
    oss << "bins: " << c.sonar.n_bins << "\n";
    oss << "fov_azimuth_deg: " << c.sonar.fov_azimuth * rad2deg << "\n";
    oss << "fov_elevation_deg: " << c.sonar.fov_elevation * rad2deg << "\n";
    oss << "range_min: " << c.sonar.range_min << "\n";
    oss << "range_max: " << c.sonar.range_max << "\n";
    oss << "frequency_khz: " << c.sonar.frequency << "\n";
    oss << "water: {temperature: " << c.sonar.water.temperature
        << ", salinity: " << c.sonar.water.salinity << ", ph: " << c.sonar.water.acidity
        << ", depth_km: " << c.sonar.water.depth << "}\n";
    oss << "noise: {sigma_mult: " << c.sonar.noise.sigma_mult
        << ", sigma_add: " << c.sonar.noise.sigma_add << "}\n";
    oss << "sigmoid: {gain: " << c.sonar.sigmoid.gain
        << ", center: " << c.sonar.sigmoid.center << "}\n";
    if (c.sonar.device == DeviceKind::MSIS) {
        oss << "msis_step_deg: " << c.msis_step_deg << "\n";
    }
    oss << "seed: " << c.seed << "\n";
    oss << "noise_enabled: " << (c.options.noise ? "true" : "false") << "\n";
    oss << "attenuation: " << (c.options.attenuation ? "true" : "false") << "\n";
    oss << "secondary: " << (c.options.secondary ? "true" : "false") << "\n";
    oss << "dump_shader: " << (c.dump_shader ? "true" : "false") << "\n";
    oss << "image_width: " << c.options.image_width << "\n";
    oss << "image_height: " << c.options.image_height << "\n";
    const Eigen::Vector3d position = c.options.pose.translation();
    oss << "pose: {position: [" << position.x() << ", " << position.y() << ", "
        << position.z() << "]}\n";
    return oss.str();
}

}  // namespace sonarsim
