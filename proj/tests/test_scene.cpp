#include "sonarsim/scene.hpp"

#include "sonarsim/errors.hpp"
#include "sonarsim/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace sonarsim;

namespace {

double mesh_area(const TriMesh& mesh) {
    double area = 0.0;
    for (const Triangle& t : mesh.triangles) {
        area += 0.5 * (t.v1 - t.v0).cross(t.v2 - t.v0).norm();
    }
    return area;
}

}  // namespace

TEST_CASE("box tessellation") {
    PrimitiveParams p;
    p.size = {1, 1, 1};
    const TriMesh box = tessellate_primitive(PrimitiveKind::Box, p);
    CHECK(box.triangles.size() == 12);
    const AABB bounds = compute_aabb(box);
    CHECK(bounds.min.isApprox(Eigen::Vector3d(-0.5, -0.5, -0.5)));
    CHECK(bounds.max.isApprox(Eigen::Vector3d(0.5, 0.5, 0.5)));
    CHECK(mesh_area(box) == doctest::Approx(6.0));
}

TEST_CASE("sphere tessellation count and area") {
    PrimitiveParams p;
    p.radius = 1.0;
    const TriMesh sphere = tessellate_primitive(PrimitiveKind::Sphere, p, 16);
    CHECK(sphere.triangles.size() == 2 * 16 * (16 - 1));
    // Analytic surface oracle: the faceted area approaches 4 pi r^2.
    CHECK(mesh_area(sphere) == doctest::Approx(4.0 * M_PI).epsilon(0.02));
}

TEST_CASE("cone tessellation") {
    PrimitiveParams p;
    p.radius = 1.0;
    p.height = 2.0;
    const TriMesh cone = tessellate_primitive(PrimitiveKind::Cone, p, 8);
    CHECK(cone.triangles.size() == 16);  // 8 side + 8 base
    bool found_apex = false;
    for (const Triangle& t : cone.triangles) {
        for (const Eigen::Vector3d* v : {&t.v0, &t.v1, &t.v2}) {
            if (v->isApprox(Eigen::Vector3d(0, 0, 2))) found_apex = true;
        }
    }
    CHECK(found_apex);
    int base_tris = 0;
    for (const Triangle& t : cone.triangles) {
        if (t.normal.isApprox(Eigen::Vector3d(0, 0, -1), 1e-9)) ++base_tris;
    }
    CHECK(base_tris == 8);
}

TEST_CASE("cylinder tessellation count") {
    PrimitiveParams p;
    p.radius = 0.5;
    p.height = 2.0;
    const TriMesh cyl = tessellate_primitive(PrimitiveKind::Cylinder, p, 12);
    CHECK(cyl.triangles.size() == 4 * 12);
}

TEST_CASE("invalid tessellation parameters") {
    PrimitiveParams p;
    p.size = {1, -1, 1};
    CHECK_THROWS_AS(tessellate_primitive(PrimitiveKind::Box, p), ValidationError);
    p.size = {1, 1, 1};
    p.radius = 0.0;
    CHECK_THROWS_AS(tessellate_primitive(PrimitiveKind::Sphere, p), ValidationError);
    p.radius = 1.0;
    CHECK_THROWS_AS(tessellate_primitive(PrimitiveKind::Sphere, p, 2), ValidationError);
}

TEST_CASE("compute_aabb") {
    TriMesh single;
    single.triangles.emplace_back(Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 0, 0),
                                  Eigen::Vector3d(0, 1, 0));
    const AABB box = compute_aabb(single);
    CHECK(box.min.isApprox(Eigen::Vector3d(0, 0, 0)));
    CHECK(box.max.isApprox(Eigen::Vector3d(1, 1, 0)));

    CHECK_THROWS_AS(compute_aabb(TriMesh{}), ValidationError);
}

TEST_CASE("sphere AABB within one chord sag of the analytic bounds") {
    PrimitiveParams p;
    p.radius = 2.0;
    const int res = 16;
    const TriMesh sphere = tessellate_primitive(PrimitiveKind::Sphere, p, res);
    const AABB box = compute_aabb(sphere);
    const double sag = p.radius * (1.0 - std::cos(M_PI / res));
    for (int axis = 0; axis < 3; ++axis) {
        CHECK(box.max[axis] <= 2.0 + 1e-12);
        CHECK(box.max[axis] >= 2.0 - sag - 1e-12);
        CHECK(box.min[axis] >= -2.0 - 1e-12);
        CHECK(box.min[axis] <= -2.0 + sag + 1e-12);
    }
}

TEST_CASE("outward normals on closed shapes") {
    for (PrimitiveKind kind : {PrimitiveKind::Box, PrimitiveKind::Sphere,
                               PrimitiveKind::Cylinder, PrimitiveKind::Cone}) {
        PrimitiveParams p;
        p.size = {1.2, 0.8, 1.5};
        p.radius = 0.7;
        p.height = 1.3;
        const TriMesh mesh = tessellate_primitive(kind, p, 9);
        const AABB box = compute_aabb(mesh);
        const Eigen::Vector3d center = (box.min + box.max) / 2.0;
        for (const Triangle& t : mesh.triangles) {
            CHECK(t.normal.norm() == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(t.normal.dot(t.centroid - center) > 0.0);
        }
    }
}

TEST_CASE("aabb contains every vertex") {
    for (PrimitiveKind kind : {PrimitiveKind::Box, PrimitiveKind::Sphere,
                               PrimitiveKind::Cylinder, PrimitiveKind::Cone,
                               PrimitiveKind::Plane}) {
        const TriMesh mesh = tessellate_primitive(kind, PrimitiveParams{}, 7);
        const AABB box = compute_aabb(mesh);
        for (const Triangle& t : mesh.triangles) {
            CHECK(box.contains(t.v0));
            CHECK(box.contains(t.v1));
            CHECK(box.contains(t.v2));
        }
    }
}

TEST_CASE("curved-surface vertices lie on the analytic surface") {
    PrimitiveParams p;
    p.radius = 1.5;
    p.height = 2.0;

    const TriMesh sphere = tessellate_primitive(PrimitiveKind::Sphere, p, 11);
    for (const Triangle& t : sphere.triangles) {
        for (const Eigen::Vector3d* v : {&t.v0, &t.v1, &t.v2}) {
            CHECK(v->norm() == doctest::Approx(1.5).epsilon(1e-9));
        }
    }

    const TriMesh cyl = tessellate_primitive(PrimitiveKind::Cylinder, p, 11);
    for (const Triangle& t : cyl.triangles) {
        for (const Eigen::Vector3d* v : {&t.v0, &t.v1, &t.v2}) {
            const double radial = std::hypot(v->x(), v->y());
            // Every cylinder vertex is on the rim or an axis cap center.
            const bool on_wall = std::abs(radial - 1.5) < 1e-9;
            const bool on_axis = radial < 1e-9;
            CHECK((on_wall || on_axis));
        }
    }

    const TriMesh cone = tessellate_primitive(PrimitiveKind::Cone, p, 11);
    for (const Triangle& t : cone.triangles) {
        for (const Eigen::Vector3d* v : {&t.v0, &t.v1, &t.v2}) {
            const double radial = std::hypot(v->x(), v->y());
            const double expected = 1.5 * (1.0 - v->z() / 2.0);
            const bool on_surface = std::abs(radial - expected) < 1e-9;
            const bool on_axis = radial < 1e-9;  // apex or base center
            CHECK((on_surface || on_axis));
        }
    }
}

TEST_CASE("random benchmark scene is seed-deterministic") {
    const Scene a = random_benchmark_scene(42);
    const Scene b = random_benchmark_scene(42);
    REQUIRE(a.objects.size() == 4);
    REQUIRE(b.objects.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) {
        REQUIRE(a.objects[i].mesh.triangles.size() == b.objects[i].mesh.triangles.size());
        for (std::size_t t = 0; t < a.objects[i].mesh.triangles.size(); ++t) {
            const Triangle& ta = a.objects[i].mesh.triangles[t];
            const Triangle& tb = b.objects[i].mesh.triangles[t];
            CHECK(ta.v0 == tb.v0);  // bit-equal
            CHECK(ta.v1 == tb.v1);
            CHECK(ta.v2 == tb.v2);
        }
    }
}

TEST_CASE("random benchmark scene has one object of each kind") {
    const Scene scene = random_benchmark_scene(123);
    std::set<std::string> kinds;
    for (const SceneObject& o : scene.objects) kinds.insert(o.name);
    CHECK(kinds == std::set<std::string>{"box", "sphere", "cylinder", "cone"});
}

TEST_CASE("different seeds move the objects") {
    int moved = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const Scene a = random_benchmark_scene(2 * s);
        const Scene b = random_benchmark_scene(2 * s + 1);
        bool any_differs = false;
        for (std::size_t i = 0; i < 4; ++i) {
            const Eigen::Vector3d ca = (a.objects[i].bounds.min + a.objects[i].bounds.max) / 2;
            const Eigen::Vector3d cb = (b.objects[i].bounds.min + b.objects[i].bounds.max) / 2;
            if ((ca - cb).norm() > 1e-6) any_differs = true;
        }
        if (any_differs) ++moved;
    }
    CHECK(moved == 100);
}

TEST_CASE("benchmark objects sit inside the frustum ranges") {
    const FrustumSpec frustum{1.0, 20.0, 2.0, 0.35};
    for (std::uint64_t s = 0; s < 30; ++s) {
        const Scene scene = random_benchmark_scene(s, frustum);
        for (const SceneObject& o : scene.objects) {
            const Eigen::Vector3d center = (o.bounds.min + o.bounds.max) / 2.0;
            const double range = center.norm();
            CHECK(range > frustum.range_min);
            CHECK(range < frustum.range_max);
            CHECK(std::abs(std::atan2(center.y(), center.x())) < frustum.fov_azimuth / 2.0 + 0.2);
        }
    }
}
