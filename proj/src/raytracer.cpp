#include "sonarsim/raytracer.hpp"

#include "sonarsim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sonarsim {

Eigen::Vector3d reflect_direction(const Eigen::Vector3d& incident,
                                  const Eigen::Vector3d& normal) {
    return incident - 2.0 * incident.dot(normal) * normal;
}

BoxHit ray_aabb_intersect(const Ray& ray, const AABB& box) {
    double t_min = 0.0;
    double t_max = std::numeric_limits<double>::infinity();
    for (int axis = 0; axis < 3; ++axis) {
        const double o = ray.origin[axis];
        const double d = ray.direction[axis];
        if (d == 0.0) {
            if (o < box.min[axis] || o > box.max[axis]) return {};
            continue;
        }
        const double inv = 1.0 / d;
        double t0 = (box.min[axis] - o) * inv;
        double t1 = (box.max[axis] - o) * inv;
        if (inv < 0.0) std::swap(t0, t1);
        t_min = std::max(t_min, t0);
        t_max = std::min(t_max, t1);
        if (t_min > t_max) return {};
    }
    return {true, t_min};
}

std::optional<TriangleHit> ray_triangle_intersect(const Ray& ray, const Triangle& tri) {
    constexpr double kDetEpsilon = 1e-12;
    const Eigen::Vector3d e1 = tri.v1 - tri.v0;
    const Eigen::Vector3d e2 = tri.v2 - tri.v0;
    const Eigen::Vector3d pvec = ray.direction.cross(e2);
    const double det = e1.dot(pvec);
    if (std::abs(det) < kDetEpsilon) return std::nullopt;  // parallel or degenerate

    const double inv_det = 1.0 / det;
    const Eigen::Vector3d tvec = ray.origin - tri.v0;
    const double u = tvec.dot(pvec) * inv_det;
    if (u < 0.0 || u > 1.0) return std::nullopt;

    const Eigen::Vector3d qvec = tvec.cross(e1);
    const double v = ray.direction.dot(qvec) * inv_det;
    if (v < 0.0 || u + v > 1.0) return std::nullopt;

    const double t = e2.dot(qvec) * inv_det;
    if (t <= kTriangleHitEpsilon) return std::nullopt;
    return TriangleHit{t, u, v};
}

namespace {

struct NearestHit {
    double t = std::numeric_limits<double>::infinity();
    const Triangle* triangle = nullptr;
    int material = 0;

    void consider(double t_hit, const Triangle& tri, int mat) {
        if (t_hit < t) {
            t = t_hit;
            triangle = &tri;
            material = mat;
        }
    }
};

TraceResult trace(const GBuffer& gbuffer, const Scene& scene, const SonarCamera& camera,
                  bool use_boxes) {
    TraceResult result;
    result.image = ReflectionImage::empty(gbuffer.width, gbuffer.height);
    const Eigen::Vector3d cam_pos = camera.position();

    for (std::size_t idx = 0; idx < gbuffer.size(); ++idx) {
        if (!gbuffer.hit(idx)) continue;
        result.stats.rays_launched++;

        const Eigen::Vector3d& surface = gbuffer.position[idx];
        const Eigen::Vector3d& normal = gbuffer.normal[idx];
        const Eigen::Vector3d incident = (surface - cam_pos).normalized();
        const Eigen::Vector3d reflected = reflect_direction(incident, normal).normalized();

        Ray ray{surface + kSelfIntersectionOffset * reflected, reflected};

        NearestHit nearest;
        for (const SceneObject& object : scene.objects) {
            if (use_boxes) {
                result.stats.box_tests++;
                if (!ray_aabb_intersect(ray, object.bounds).hit) {
                    result.stats.triangle_tests_skipped_by_box +=
                        object.mesh.triangles.size();
                    continue;
                }
            }
            for (const Triangle& tri : object.mesh.triangles) {
                result.stats.triangle_tests++;
                if (const auto hit = ray_triangle_intersect(ray, tri)) {
                    nearest.consider(hit->t, tri, object.mesh.material_id);
                }
            }
        }
        if (!nearest.triangle) continue;

        // Lambert at the second surface, seen along the reflected direction,
        // dimmed by the energy already lost at the first bounce.
        const double incidence =
            std::clamp(nearest.triangle->normal.dot(-reflected), 0.0, 1.0);
        const double reflectivity =
            scene.materials.at(static_cast<std::size_t>(nearest.material)).reflectivity;
        const Eigen::Vector3d to_camera = (cam_pos - surface).normalized();
        const double first_bounce = std::clamp(normal.dot(to_camera), 0.0, 1.0);

        const double segment = nearest.t + kSelfIntersectionOffset;
        result.image.distance[idx] = gbuffer.depth[idx] + segment;
        result.image.intensity[idx] =
            std::clamp(incidence * reflectivity * first_bounce, 0.0, 1.0);
    }
    return result;
}

}  // namespace

TraceResult secondary_reflections(const GBuffer& gbuffer, const Scene& scene,
                                  const SonarCamera& camera) {
    return trace(gbuffer, scene, camera, true);
}

TraceResult secondary_reflections_brute_force(const GBuffer& gbuffer, const Scene& scene,
                                              const SonarCamera& camera) {
    return trace(gbuffer, scene, camera, false);
}

ReflectionImage unify_reflections(const ReflectionImage& primary,
                                  const ReflectionImage& secondary) {
    if (primary.width != secondary.width || primary.height != secondary.height) {
        throw ValidationError("unify_reflections: image dimensions differ");
    }
    ReflectionImage out = primary;
    out.echo2_distance = secondary.distance;
    out.echo2_intensity = secondary.intensity;
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (out.echo2_distance[i] != kNoSample && out.distance[i] == kNoSample) {
            throw ValidationError(
                "unify_reflections: secondary sample at a pixel with no primary hit");
        }
    }
    return out;
}

}  // namespace sonarsim
