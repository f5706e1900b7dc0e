#pragma once

#include "sonarsim/rasterizer.hpp"
#include "sonarsim/scene.hpp"

#include <cstdint>
#include <optional>

// Secondary-reflection pass: every rasterized hit pixel launches one
// mirror-reflected ray; per-object bounding boxes cull the triangle tests.

namespace sonarsim {

struct Ray {
    Eigen::Vector3d origin;
    Eigen::Vector3d direction;  // unit
};

/// Work counters backing the culling-effectiveness claims.
struct IntersectionStats {
    std::uint64_t rays_launched = 0;
    std::uint64_t box_tests = 0;
    std::uint64_t triangle_tests = 0;
    std::uint64_t triangle_tests_skipped_by_box = 0;

    IntersectionStats& operator+=(const IntersectionStats& o) {
        rays_launched += o.rays_launched;
        box_tests += o.box_tests;
        triangle_tests += o.triangle_tests;
        triangle_tests_skipped_by_box += o.triangle_tests_skipped_by_box;
        return *this;
    }
};

/// Offset applied along a reflected ray to escape the emitting surface, m.
inline constexpr double kSelfIntersectionOffset = 1e-4;
/// Minimum accepted ray parameter for a triangle hit, m.
inline constexpr double kTriangleHitEpsilon = 1e-6;

/// Mirror reflection r = i - 2 (i.n) n.
Eigen::Vector3d reflect_direction(const Eigen::Vector3d& incident,
                                  const Eigen::Vector3d& normal);

struct BoxHit {
    bool hit = false;
    double t = 0.0;  // entry parameter; 0 when the origin is inside
};

/// Slab test, correct for all direction-component signs including exact
/// zeros; comparisons are inclusive so tangent rays count as hits.
BoxHit ray_aabb_intersect(const Ray& ray, const AABB& box);

struct TriangleHit {
    double t = 0.0;  // ray parameter, m
    double u = 0.0;  // barycentric
    double v = 0.0;
};

/// Moller-Trumbore; hits require t > kTriangleHitEpsilon and barycentrics
/// inside the triangle. Degenerate and parallel cases miss.
std::optional<TriangleHit> ray_triangle_intersect(const Ray& ray, const Triangle& tri);

struct TraceResult {
    ReflectionImage image;  // secondary returns at the originating pixels
    IntersectionStats stats;
};

/// Selective secondary pass: pixels with a nonzero G-buffer normal launch a
/// reflected ray; objects whose AABB the ray misses are skipped wholesale.
/// A recorded return carries the accumulated path (primary depth + reflected
/// segment) and the second surface's Lambert-times-reflectivity intensity
/// scaled by the first bounce's intensity.
TraceResult secondary_reflections(const GBuffer& gbuffer, const Scene& scene,
                                  const SonarCamera& camera);

/// Same selection and shading, but every ray is tested against every
/// triangle with no box culling. Reference route for the ablation study.
TraceResult secondary_reflections_brute_force(const GBuffer& gbuffer, const Scene& scene,
                                              const SonarCamera& camera);

/// Blends primary and secondary returns into one shader image: the primary
/// sample stays in place, the secondary sample is attached to its
/// originating pixel so the sonogram stage bins both.
ReflectionImage unify_reflections(const ReflectionImage& primary,
                                  const ReflectionImage& secondary);

}  // namespace sonarsim
