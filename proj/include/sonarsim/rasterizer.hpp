#pragma once

#include "sonarsim/scene.hpp"

#include <Eigen/Geometry>

#include <cstdint>
#include <vector>

// Primary-reflection pass. A virtual pinhole camera configured with the sonar
// field of view renders the scene into G-buffers (world position, world
// normal, Euclidean depth); deferred shading then turns those into pulse
// distance and echo intensity without launching any rays.

namespace sonarsim {

struct SonarCamera {
    Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();  // +x forward, +z up
    double fov_azimuth = 120.0 * M_PI / 180.0;    // rad, < pi
    double fov_elevation = 20.0 * M_PI / 180.0;   // rad, < pi
    double range_min = 1.0;                       // m
    double range_max = 20.0;                      // m
    int width = 256;                              // px
    int height = 32;                              // px

    void validate() const;
    Eigen::Vector3d position() const { return pose.translation(); }

    /// Unit view ray through the center of pixel (u, v), in world space.
    /// Columns map left to right onto azimuth -fov/2..+fov/2 through the
    /// pinhole tangent mapping; rows map top to bottom onto +el..-el.
    Eigen::Vector3d pixel_ray(int u, int v) const;

    /// Bearing (azimuth) of a vertical image line at continuous column x
    /// in [0, width]; all pixels of a column share this bearing.
    double column_bearing(double x) const;
};

struct GBuffer {
    int width = 0;
    int height = 0;
    std::vector<Eigen::Vector3d> position;  // world, valid where hit
    std::vector<Eigen::Vector3d> normal;    // world unit normal; zero = no hit
    std::vector<double> depth;              // Euclidean camera distance; +inf = no hit
    std::vector<int> material;              // material index; -1 = no hit

    bool hit(std::size_t idx) const { return std::isfinite(depth[idx]); }
    std::size_t size() const { return static_cast<std::size_t>(width) * height; }
    std::size_t hit_count() const;
};

/// Per-pixel sonar rendering parameters. `distance` plays the role of the
/// shader image's blue channel, `intensity` the green channel. A second
/// sample per pixel (secondary reflections after unification) lives in the
/// echo2_* planes; kNoSample marks absent samples.
struct ReflectionImage {
    int width = 0;
    int height = 0;
    std::vector<double> distance;
    std::vector<double> intensity;
    std::vector<double> echo2_distance;
    std::vector<double> echo2_intensity;

    static ReflectionImage empty(int w, int h);
    bool has_secondary() const { return !echo2_distance.empty(); }
    std::size_t size() const { return static_cast<std::size_t>(width) * height; }
};

inline constexpr double kNoSample = -1.0;

/// Z-buffered perspective rasterization of the scene into G-buffers.
/// Depth is the Euclidean camera-to-surface distance; fragments outside
/// [range_min, range_max] are discarded, back faces are culled, depth ties
/// go to the lower triangle index.
GBuffer rasterize(const Scene& scene, const SonarCamera& camera);

/// Mean tilt angle per unit roughness (folded-normal mean of the unit-sigma
/// tilt distribution).
inline const double kMeanTiltPerRoughness = std::sqrt(2.0 / M_PI);

/// Tilts every hit pixel's normal by |N(0, roughness)| radians around a
/// random tangent axis, faking surface roughness without extra polygons.
/// Deterministic in (seed, pixel index); roughness 0 leaves pixels untouched.
GBuffer perturb_normals(const GBuffer& gbuffer, const std::vector<Material>& materials,
                        std::uint64_t seed);

/// Deferred shading of the G-buffers: pulse distance is the Euclidean range,
/// echo intensity the Lambertian incidence times material reflectivity.
ReflectionImage primary_reflections(const GBuffer& gbuffer, const SonarCamera& camera,
                                    const std::vector<Material>& materials);

}  // namespace sonarsim
