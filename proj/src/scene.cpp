#include "sonarsim/scene.hpp"

#include "sonarsim/errors.hpp"
#include "sonarsim/rng.hpp"

#include <cmath>
#include <limits>

namespace sonarsim {

Triangle::Triangle(const Eigen::Vector3d& a, const Eigen::Vector3d& b,
                   const Eigen::Vector3d& c)
    : v0(a), v1(b), v2(c) {
    const Eigen::Vector3d n = (v1 - v0).cross(v2 - v0);
    const double len = n.norm();
    normal = len > 0.0 ? Eigen::Vector3d(n / len) : Eigen::Vector3d::Zero();
    centroid = (v0 + v1 + v2) / 3.0;
}

void Scene::add_object(TriMesh mesh, std::string name) {
    AABB bounds = compute_aabb(mesh);
    objects.push_back({std::move(mesh), bounds, std::move(name)});
}

PrimitiveKind primitive_kind_from_string(const std::string& s) {
    if (s == "box") return PrimitiveKind::Box;
    if (s == "sphere") return PrimitiveKind::Sphere;
    if (s == "cylinder") return PrimitiveKind::Cylinder;
    if (s == "cone") return PrimitiveKind::Cone;
    if (s == "plane") return PrimitiveKind::Plane;
    throw ValidationError("unknown primitive kind: '" + s + "'");
}

std::string to_string(PrimitiveKind kind) {
    switch (kind) {
        case PrimitiveKind::Box: return "box";
        case PrimitiveKind::Sphere: return "sphere";
        case PrimitiveKind::Cylinder: return "cylinder";
        case PrimitiveKind::Cone: return "cone";
        case PrimitiveKind::Plane: return "plane";
    }
    return "?";
}

namespace {

void require_positive(double value, const char* what) {
    if (!(value > 0.0)) {
        throw ValidationError(std::string("primitive dimension '") + what +
                              "' must be positive");
    }
}

void add_tri(TriMesh& mesh, const Eigen::Vector3d& a, const Eigen::Vector3d& b,
             const Eigen::Vector3d& c) {
    mesh.triangles.emplace_back(a, b, c);
}

TriMesh tessellate_box(const Eigen::Vector3d& size) {
    require_positive(size.x(), "size.x");
    require_positive(size.y(), "size.y");
    require_positive(size.z(), "size.z");
    const Eigen::Vector3d h = size / 2.0;
    TriMesh mesh;
    mesh.triangles.reserve(12);
    // Corners indexed by bit pattern (x, y, z).
    Eigen::Vector3d c[8];
    for (int i = 0; i < 8; ++i) {
        c[i] = {(i & 1) ? h.x() : -h.x(), (i & 2) ? h.y() : -h.y(),
                (i & 4) ? h.z() : -h.z()};
    }
    auto quad = [&](int a, int b, int d, int e) {
        add_tri(mesh, c[a], c[b], c[d]);
        add_tri(mesh, c[a], c[d], c[e]);
    };
    quad(1, 3, 7, 5);  // +x
    quad(2, 0, 4, 6);  // -x
    quad(3, 2, 6, 7);  // +y
    quad(0, 1, 5, 4);  // -y
    quad(4, 5, 7, 6);  // +z
    quad(0, 2, 3, 1);  // -z
    return mesh;
}

TriMesh tessellate_sphere(double radius, int res) {
    require_positive(radius, "radius");
    TriMesh mesh;
    mesh.triangles.reserve(static_cast<std::size_t>(2 * res * (res - 1)));
    // res latitude stacks, res longitude slices; poles are shared vertices.
    auto vertex = [&](int stack, int slice) {
        const double phi = M_PI * stack / res;
        const double theta = 2.0 * M_PI * slice / res;
        return Eigen::Vector3d(radius * std::sin(phi) * std::cos(theta),
                               radius * std::sin(phi) * std::sin(theta),
                               radius * std::cos(phi));
    };
    for (int i = 0; i < res; ++i) {
        for (int j = 0; j < res; ++j) {
            const int j1 = (j + 1) % res;
            const Eigen::Vector3d a = vertex(i, j);
            const Eigen::Vector3d b = vertex(i + 1, j);
            const Eigen::Vector3d c = vertex(i + 1, j1);
            const Eigen::Vector3d d = vertex(i, j1);
            if (i == 0) {
                add_tri(mesh, a, b, c);  // a is the north pole
            } else if (i == res - 1) {
                add_tri(mesh, a, b, d);  // b is the south pole
            } else {
                add_tri(mesh, a, b, c);
                add_tri(mesh, a, c, d);
            }
        }
    }
    return mesh;
}

TriMesh tessellate_cylinder(double radius, double height, int res) {
    require_positive(radius, "radius");
    require_positive(height, "height");
    TriMesh mesh;
    mesh.triangles.reserve(static_cast<std::size_t>(4 * res));
    const double h = height / 2.0;
    auto rim = [&](int j, double z) {
        const double theta = 2.0 * M_PI * j / res;
        return Eigen::Vector3d(radius * std::cos(theta), radius * std::sin(theta), z);
    };
    const Eigen::Vector3d top(0, 0, h), bottom(0, 0, -h);
    for (int j = 0; j < res; ++j) {
        const int j1 = (j + 1) % res;
        const Eigen::Vector3d a = rim(j, -h), b = rim(j1, -h);
        const Eigen::Vector3d c = rim(j1, h), d = rim(j, h);
        add_tri(mesh, a, b, c);  // side
        add_tri(mesh, a, c, d);
        add_tri(mesh, top, d, c);     // +z cap
        add_tri(mesh, bottom, b, a);  // -z cap
    }
    return mesh;
}

TriMesh tessellate_cone(double radius, double height, int res) {
    require_positive(radius, "radius");
    require_positive(height, "height");
    TriMesh mesh;
    mesh.triangles.reserve(static_cast<std::size_t>(2 * res));
    const Eigen::Vector3d apex(0, 0, height), base_center(0, 0, 0);
    auto rim = [&](int j) {
        const double theta = 2.0 * M_PI * j / res;
        return Eigen::Vector3d(radius * std::cos(theta), radius * std::sin(theta), 0.0);
    };
    for (int j = 0; j < res; ++j) {
        const int j1 = (j + 1) % res;
        add_tri(mesh, rim(j), rim(j1), apex);          // side
        add_tri(mesh, base_center, rim(j1), rim(j));   // base, facing -z
    }
    return mesh;
}

TriMesh tessellate_plane(double sx, double sy) {
    require_positive(sx, "size.x");
    require_positive(sy, "size.y");
    const double hx = sx / 2.0, hy = sy / 2.0;
    TriMesh mesh;
    const Eigen::Vector3d a(-hx, -hy, 0), b(hx, -hy, 0), c(hx, hy, 0), d(-hx, hy, 0);
    add_tri(mesh, a, b, c);
    add_tri(mesh, a, c, d);
    return mesh;
}

}  // namespace

TriMesh tessellate_primitive(PrimitiveKind kind, const PrimitiveParams& params,
                             int resolution) {
    const bool curved = kind == PrimitiveKind::Sphere ||
                        kind == PrimitiveKind::Cylinder || kind == PrimitiveKind::Cone;
    if (curved && resolution < 3) {
        throw ValidationError("resolution must be >= 3 for curved primitives");
    }
    switch (kind) {
        case PrimitiveKind::Box: return tessellate_box(params.size);
        case PrimitiveKind::Sphere: return tessellate_sphere(params.radius, resolution);
        case PrimitiveKind::Cylinder:
            return tessellate_cylinder(params.radius, params.height, resolution);
        case PrimitiveKind::Cone:
            return tessellate_cone(params.radius, params.height, resolution);
        case PrimitiveKind::Plane:
            return tessellate_plane(params.size.x(), params.size.y());
    }
    throw ValidationError("unknown primitive kind");
}

AABB compute_aabb(const TriMesh& mesh) {
    if (mesh.triangles.empty()) {
        throw ValidationError("compute_aabb: mesh has no triangles");
    }
    AABB box;
    box.min.setConstant(std::numeric_limits<double>::infinity());
    box.max.setConstant(-std::numeric_limits<double>::infinity());
    for (const Triangle& t : mesh.triangles) {
        for (const Eigen::Vector3d* v : {&t.v0, &t.v1, &t.v2}) {
            box.min = box.min.cwiseMin(*v);
            box.max = box.max.cwiseMax(*v);
        }
    }
    return box;
}

TriMesh transform_mesh(const TriMesh& mesh, const Eigen::Isometry3d& pose) {
    TriMesh out;
    out.material_id = mesh.material_id;
    out.triangles.reserve(mesh.triangles.size());
    for (const Triangle& t : mesh.triangles) {
        out.triangles.emplace_back(pose * t.v0, pose * t.v1, pose * t.v2);
    }
    return out;
}

Scene random_benchmark_scene(std::uint64_t seed, const FrustumSpec& frustum) {
    SplitMix64 rng(mix64(seed ^ 0xb5297a4d3e8c6f21ull));
    Scene scene;

    const double r_span = frustum.range_max - frustum.range_min;
    const double r_lo = frustum.range_min + 0.1 * r_span;
    const double r_hi = frustum.range_max - 0.1 * r_span;
    const double half_az = 0.8 * frustum.fov_azimuth / 2.0;
    const double half_el = 0.8 * frustum.fov_elevation / 2.0;

    const PrimitiveKind kinds[4] = {PrimitiveKind::Cylinder, PrimitiveKind::Box,
                                    PrimitiveKind::Sphere, PrimitiveKind::Cone};
    for (PrimitiveKind kind : kinds) {
        PrimitiveParams params;
        params.size = {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0)};
        params.radius = rng.uniform(0.3, 1.0);
        params.height = rng.uniform(1.0, 3.0);

        const double range = rng.uniform(r_lo, r_hi);
        const double bearing = rng.uniform(-half_az, half_az);
        const double elevation = rng.uniform(-half_el, half_el);
        const double yaw = rng.uniform(0.0, 2.0 * M_PI);

        // Camera frame: +x forward, azimuth in the xy plane, elevation toward +z.
        const Eigen::Vector3d position(
            range * std::cos(elevation) * std::cos(bearing),
            range * std::cos(elevation) * std::sin(bearing),
            range * std::sin(elevation));
        Eigen::Isometry3d pose = Eigen::Isometry3d::Identity();
        pose.translate(position);
        pose.rotate(Eigen::AngleAxisd(yaw, Eigen::Vector3d::UnitZ()));

        Material material;
        material.reflectivity = rng.uniform(0.6, 1.0);
        material.roughness = rng.uniform(0.0, 0.1);
        scene.materials.push_back(material);

        TriMesh mesh = tessellate_primitive(kind, params, 16);
        mesh.material_id = static_cast<int>(scene.materials.size()) - 1;
        scene.add_object(transform_mesh(mesh, pose), to_string(kind));
    }
    return scene;
}

}  // namespace sonarsim
