#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <cstdint>
#include <string>
#include <vector>

// Scene description: triangle meshes with per-object acoustic materials,
// primitive tessellation and axis-aligned bounds for the ray tracer.

namespace sonarsim {

struct Triangle {
    Eigen::Vector3d v0, v1, v2;
    Eigen::Vector3d normal;    // unit, normalize((v1-v0) x (v2-v0))
    Eigen::Vector3d centroid;  // (v0+v1+v2)/3

    Triangle() = default;
    Triangle(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c);
};

struct Material {
    double reflectivity = 1.0;  // [0, 1], scales the echo intensity
    double roughness = 0.0;     // >= 0, normal perturbation amplitude, rad
};

struct TriMesh {
    std::vector<Triangle> triangles;
    int material_id = 0;
};

struct AABB {
    Eigen::Vector3d min;
    Eigen::Vector3d max;

    bool contains(const Eigen::Vector3d& p) const {
        return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
    }
};

struct SceneObject {
    TriMesh mesh;
    AABB bounds;
    std::string name;
};

struct Scene {
    std::vector<SceneObject> objects;
    std::vector<Material> materials;

    std::size_t triangle_count() const {
        std::size_t n = 0;
        for (const auto& o : objects) n += o.mesh.triangles.size();
        return n;
    }
    const Material& material_of(const SceneObject& o) const {
        return materials.at(static_cast<std::size_t>(o.mesh.material_id));
    }
    /// Recomputes each object's AABB and appends it to the object list.
    void add_object(TriMesh mesh, std::string name = {});
};

enum class PrimitiveKind { Box, Sphere, Cylinder, Cone, Plane };

PrimitiveKind primitive_kind_from_string(const std::string& s);
std::string to_string(PrimitiveKind kind);

/// Dimensions of a primitive; which fields matter depends on the kind.
struct PrimitiveParams {
    Eigen::Vector3d size{1.0, 1.0, 1.0};  // box: full extents; plane: x/y extents
    double radius = 0.5;                  // sphere, cylinder, cone
    double height = 1.0;                  // cylinder (centered on z), cone (base z=0, apex z=+h)
};

/// Tessellates an analytic primitive into triangles.
///
/// All shapes are axis-aligned around the origin before any pose is applied:
/// box and sphere centered, cylinder centered on z in [-h/2, h/2], cone with
/// its base disc on z=0 and apex at (0,0,h), plane in z=0 facing +z.
/// Triangle counts are deterministic in (kind, resolution): box 12, plane 2,
/// sphere 2*res*(res-1), cylinder 4*res, cone 2*res.
TriMesh tessellate_primitive(PrimitiveKind kind, const PrimitiveParams& params,
                             int resolution = 16);

/// Exact component-wise vertex extremes; throws on an empty mesh.
AABB compute_aabb(const TriMesh& mesh);

/// Applies a rigid transform to every vertex and rebuilds the derived fields.
TriMesh transform_mesh(const TriMesh& mesh, const Eigen::Isometry3d& pose);

/// Viewing volume the benchmark generator places objects into.
struct FrustumSpec {
    double range_min = 1.0;
    double range_max = 20.0;
    double fov_azimuth = 120.0 * M_PI / 180.0;
    double fov_elevation = 20.0 * M_PI / 180.0;
};

/// One cylinder, box, sphere and cone at seed-deterministic poses inside the
/// frustum: range uniform in the middle 80% of [r_min, r_max], bearing and
/// elevation uniform within 80% of the half field of view.
Scene random_benchmark_scene(std::uint64_t seed, const FrustumSpec& frustum = {});

}  // namespace sonarsim
