#include "sonarsim/rasterizer.hpp"

#include "sonarsim/errors.hpp"
#include "sonarsim/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace sonarsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Camera-space clip plane; vertices behind it are cut before projection.
constexpr double kNearClip = 1e-6;
}  // namespace

void SonarCamera::validate() const {
    if (!(fov_azimuth > 0.0 && fov_azimuth < M_PI)) {
        throw ValidationError("camera: fov_azimuth must be in (0, pi)");
    }
    if (!(fov_elevation > 0.0 && fov_elevation < M_PI)) {
        throw ValidationError("camera: fov_elevation must be in (0, pi)");
    }
    if (!(range_min > 0.0 && range_min < range_max)) {
        throw ValidationError("camera: requires 0 < range_min < range_max");
    }
    if (width < 1 || height < 1) {
        throw ValidationError("camera: image dimensions must be >= 1");
    }
}

Eigen::Vector3d SonarCamera::pixel_ray(int u, int v) const {
    const double ta = std::tan(fov_azimuth / 2.0);
    const double te = std::tan(fov_elevation / 2.0);
    const double y = (2.0 * (u + 0.5) / width - 1.0) * ta;
    const double z = (1.0 - 2.0 * (v + 0.5) / height) * te;
    const Eigen::Vector3d dir_cam = Eigen::Vector3d(1.0, y, z).normalized();
    return pose.linear() * dir_cam;
}

double SonarCamera::column_bearing(double x) const {
    const double ta = std::tan(fov_azimuth / 2.0);
    return std::atan((2.0 * x / width - 1.0) * ta);
}

std::size_t GBuffer::hit_count() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < depth.size(); ++i) {
        if (hit(i)) ++n;
    }
    return n;
}

ReflectionImage ReflectionImage::empty(int w, int h) {
    ReflectionImage img;
    img.width = w;
    img.height = h;
    img.distance.assign(static_cast<std::size_t>(w) * h, kNoSample);
    img.intensity.assign(static_cast<std::size_t>(w) * h, 0.0);
    return img;
}

namespace {

struct ClipVertex {
    Eigen::Vector3d cam;    // camera-space position
    Eigen::Vector3d world;  // carried attribute
};

// Clips a triangle against the camera-space plane x >= kNearClip.
// Returns the surviving polygon (0, 3 or 4 vertices).
int clip_near(const std::array<ClipVertex, 3>& in, std::array<ClipVertex, 4>& out) {
    int n = 0;
    for (int i = 0; i < 3; ++i) {
        const ClipVertex& a = in[i];
        const ClipVertex& b = in[(i + 1) % 3];
        const bool a_in = a.cam.x() >= kNearClip;
        const bool b_in = b.cam.x() >= kNearClip;
        if (a_in) out[n++] = a;
        if (a_in != b_in) {
            const double t = (kNearClip - a.cam.x()) / (b.cam.x() - a.cam.x());
            out[n++] = {a.cam + t * (b.cam - a.cam), a.world + t * (b.world - a.world)};
        }
    }
    return n;
}

struct ScreenVertex {
    double x, y;   // continuous pixel coordinates
    double inv_w;  // 1 / camera-space x
    Eigen::Vector3d world;
};

}  // namespace

GBuffer rasterize(const Scene& scene, const SonarCamera& camera) {
    camera.validate();
    const int W = camera.width;
    const int H = camera.height;

    GBuffer gbuf;
    gbuf.width = W;
    gbuf.height = H;
    gbuf.position.assign(gbuf.size(), Eigen::Vector3d::Zero());
    gbuf.normal.assign(gbuf.size(), Eigen::Vector3d::Zero());
    gbuf.depth.assign(gbuf.size(), kInf);
    gbuf.material.assign(gbuf.size(), -1);
    std::vector<long> winner(gbuf.size(), -1);  // triangle index of current fragment

    const Eigen::Isometry3d world_to_cam = camera.pose.inverse();
    const Eigen::Vector3d cam_pos = camera.position();
    const double ta = std::tan(camera.fov_azimuth / 2.0);
    const double te = std::tan(camera.fov_elevation / 2.0);

    long tri_index = -1;
    for (const SceneObject& object : scene.objects) {
        for (const Triangle& tri : object.mesh.triangles) {
            ++tri_index;
            // Back faces cannot return echo toward a monostatic source.
            if (tri.normal.dot(tri.v0 - cam_pos) >= 0.0) continue;

            const std::array<ClipVertex, 3> cv = {
                ClipVertex{world_to_cam * tri.v0, tri.v0},
                ClipVertex{world_to_cam * tri.v1, tri.v1},
                ClipVertex{world_to_cam * tri.v2, tri.v2}};
            std::array<ClipVertex, 4> poly;
            const int n = clip_near(cv, poly);
            if (n < 3) continue;

            std::array<ScreenVertex, 4> sv;
            for (int i = 0; i < n; ++i) {
                const Eigen::Vector3d& p = poly[i].cam;
                sv[i] = {(p.y() / (p.x() * ta) + 1.0) * 0.5 * W,
                         (1.0 - p.z() / (p.x() * te)) * 0.5 * H, 1.0 / p.x(),
                         poly[i].world};
            }

            // Fan-triangulate the clipped polygon.
            for (int k = 1; k + 1 < n; ++k) {
                const ScreenVertex& A = sv[0];
                const ScreenVertex& B = sv[k];
                const ScreenVertex& C = sv[k + 1];

                const double area = (B.x - A.x) * (C.y - A.y) - (B.y - A.y) * (C.x - A.x);
                if (area == 0.0) continue;
                const double inv_area = 1.0 / area;

                const double min_x = std::min({A.x, B.x, C.x});
                const double max_x = std::max({A.x, B.x, C.x});
                const double min_y = std::min({A.y, B.y, C.y});
                const double max_y = std::max({A.y, B.y, C.y});
                const int u0 = std::max(0, static_cast<int>(std::ceil(min_x - 0.5)));
                const int u1 = std::min(W - 1, static_cast<int>(std::floor(max_x - 0.5)));
                const int v0 = std::max(0, static_cast<int>(std::ceil(min_y - 0.5)));
                const int v1 = std::min(H - 1, static_cast<int>(std::floor(max_y - 0.5)));

                for (int v = v0; v <= v1; ++v) {
                    const double py = v + 0.5;
                    for (int u = u0; u <= u1; ++u) {
                        const double px = u + 0.5;
                        // Barycentric weights from the edge functions.
                        double l0 = ((B.x - px) * (C.y - py) - (B.y - py) * (C.x - px)) * inv_area;
                        double l1 = ((C.x - px) * (A.y - py) - (C.y - py) * (A.x - px)) * inv_area;
                        double l2 = 1.0 - l0 - l1;
                        if (l0 < 0.0 || l1 < 0.0 || l2 < 0.0) continue;

                        // Perspective-correct world position.
                        const double denom = l0 * A.inv_w + l1 * B.inv_w + l2 * C.inv_w;
                        const Eigen::Vector3d world =
                            (l0 * A.inv_w * A.world + l1 * B.inv_w * B.world +
                             l2 * C.inv_w * C.world) /
                            denom;
                        const double dist = (world - cam_pos).norm();
                        if (dist < camera.range_min || dist > camera.range_max) continue;

                        const std::size_t idx = static_cast<std::size_t>(v) * W + u;
                        if (dist < gbuf.depth[idx] ||
                            (dist == gbuf.depth[idx] && tri_index < winner[idx])) {
                            gbuf.depth[idx] = dist;
                            gbuf.position[idx] = world;
                            gbuf.normal[idx] = tri.normal;
                            gbuf.material[idx] = object.mesh.material_id;
                            winner[idx] = tri_index;
                        }
                    }
                }
            }
        }
    }
    return gbuf;
}

GBuffer perturb_normals(const GBuffer& gbuffer, const std::vector<Material>& materials,
                        std::uint64_t seed) {
    GBuffer out = gbuffer;
    const std::uint64_t key_base = derive_key(seed, 0x6e6f726d616c73ull);
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!out.hit(i)) continue;
        const int mat = out.material[i];
        const double roughness =
            (mat >= 0 && mat < static_cast<int>(materials.size()))
                ? materials[static_cast<std::size_t>(mat)].roughness
                : 0.0;
        if (roughness <= 0.0) continue;

        const std::uint64_t key = derive_key(key_base, i);
        const double tilt = std::abs(rng_gaussian(key, 0)) * roughness;
        const double spin = rng_u01(key, 2) * 2.0 * M_PI;

        const Eigen::Vector3d n = out.normal[i];
        // Tangent frame; pick the axis least aligned with n for stability.
        const Eigen::Vector3d ref = std::abs(n.x()) < 0.9 ? Eigen::Vector3d::UnitX()
                                                          : Eigen::Vector3d::UnitY();
        const Eigen::Vector3d t1 = n.cross(ref).normalized();
        const Eigen::Vector3d t2 = n.cross(t1);
        const Eigen::Vector3d axis = std::cos(spin) * t1 + std::sin(spin) * t2;
        out.normal[i] = (Eigen::AngleAxisd(tilt, axis) * n).normalized();
    }
    return out;
}

ReflectionImage primary_reflections(const GBuffer& gbuffer, const SonarCamera& camera,
                                    const std::vector<Material>& materials) {
    ReflectionImage img = ReflectionImage::empty(gbuffer.width, gbuffer.height);
    const Eigen::Vector3d cam_pos = camera.position();
    for (std::size_t i = 0; i < gbuffer.size(); ++i) {
        if (!gbuffer.hit(i)) continue;
        const Eigen::Vector3d to_camera = (cam_pos - gbuffer.position[i]).normalized();
        const double incidence = std::clamp(gbuffer.normal[i].dot(to_camera), 0.0, 1.0);
        const int mat = gbuffer.material[i];
        const double reflectivity =
            (mat >= 0 && mat < static_cast<int>(materials.size()))
                ? materials[static_cast<std::size_t>(mat)].reflectivity
                : 1.0;
        img.distance[i] = gbuffer.depth[i];
        img.intensity[i] = incidence * reflectivity;
    }
    return img;
}

}  // namespace sonarsim
