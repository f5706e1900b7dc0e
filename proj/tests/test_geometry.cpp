#include "sonarsim/geometry.hpp"
#include "sonarsim/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace sonarsim;

TEST_CASE("cartesian_to_spherical axis cases") {
    const SphericalPoint x = cartesian_to_spherical({1, 0, 0});
    CHECK(x.r == doctest::Approx(1.0));
    CHECK(x.theta == doctest::Approx(0.0));
    CHECK(x.phi == doctest::Approx(M_PI / 2));

    const SphericalPoint z = cartesian_to_spherical({0, 0, 1});
    CHECK(z.r == doctest::Approx(1.0));
    CHECK(z.theta == doctest::Approx(0.0));
    CHECK(z.phi == doctest::Approx(0.0));
}

TEST_CASE("cartesian_to_spherical 3-4-5 triangle") {
    const SphericalPoint q = cartesian_to_spherical({3, 4, 0});
    CHECK(q.r == doctest::Approx(5.0).epsilon(1e-12));
    // atan2(4, 3), frozen from a high-precision evaluation
    CHECK(q.theta == doctest::Approx(0.9272952180016122).epsilon(1e-12));
    CHECK(q.phi == doctest::Approx(M_PI / 2).epsilon(1e-12));
}

TEST_CASE("origin maps to all-zero by convention") {
    const SphericalPoint o = cartesian_to_spherical({0, 0, 0});
    CHECK(o.r == 0.0);
    CHECK(o.theta == 0.0);
    CHECK(o.phi == 0.0);
}

TEST_CASE("polar_to_cartesian") {
    CHECK(polar_to_cartesian({1, 0}).isApprox(Eigen::Vector2d(1, 0), 1e-15));
    const Eigen::Vector2d q = polar_to_cartesian({2, M_PI / 2});
    CHECK(q.x() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(q.y() == doctest::Approx(2.0));
    const Eigen::Vector2d p = polar_to_cartesian({5, 0.9272952180016122});
    CHECK(p.x() == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(p.y() == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("spherical_to_cartesian axis cases and round trip") {
    CHECK(spherical_to_cartesian({1, 0, M_PI / 2}).isApprox(Eigen::Vector3d(1, 0, 0), 1e-12));
    CHECK((spherical_to_cartesian({1, 0, 0}) - Eigen::Vector3d(0, 0, 1)).norm() < 1e-12);
    CHECK(spherical_to_cartesian({5, 0.9272952180016122, M_PI / 2})
              .isApprox(Eigen::Vector3d(3, 4, 0), 1e-9));
}

TEST_CASE("round trip property over random points") {
    SplitMix64 rng(7);
    for (int i = 0; i < 20000; ++i) {
        const Eigen::Vector3d p(rng.uniform(-100, 100), rng.uniform(-100, 100),
                                rng.uniform(-100, 100));
        if (std::hypot(p.x(), p.y()) < 1e-6) continue;  // z-axis is degenerate
        const Eigen::Vector3d back = spherical_to_cartesian(cartesian_to_spherical(p));
        CHECK((back - p).norm() <= 1e-9 * std::max(1.0, p.norm()));
    }
}

TEST_CASE("polar magnitude preserved") {
    SplitMix64 rng(8);
    for (int i = 0; i < 20000; ++i) {
        const PolarPoint q{rng.uniform(0, 1000), rng.uniform(-M_PI, M_PI)};
        CHECK(polar_to_cartesian(q).norm() == doctest::Approx(q.r).epsilon(1e-12));
    }
}

TEST_CASE("scale equivariance in r") {
    SplitMix64 rng(9);
    for (int i = 0; i < 5000; ++i) {
        const Eigen::Vector3d p(rng.uniform(-10, 10), rng.uniform(-10, 10),
                                rng.uniform(-10, 10));
        if (p.norm() < 1e-9) continue;
        const SphericalPoint a = cartesian_to_spherical(p);
        const SphericalPoint b = cartesian_to_spherical(2.0 * p);
        CHECK(b.r == doctest::Approx(2.0 * a.r).epsilon(1e-12));
        CHECK(b.theta == doctest::Approx(a.theta).epsilon(1e-12));
        CHECK(b.phi == doctest::Approx(a.phi).epsilon(1e-12));
    }
}

TEST_CASE("spherical invariant ranges") {
    SplitMix64 rng(10);
    for (int i = 0; i < 5000; ++i) {
        const Eigen::Vector3d p(rng.uniform(-10, 10), rng.uniform(-10, 10),
                                rng.uniform(-10, 10));
        const SphericalPoint q = cartesian_to_spherical(p);
        CHECK(q.r >= 0.0);
        CHECK(q.theta >= -M_PI);
        CHECK(q.theta <= M_PI);
        CHECK(q.phi >= 0.0);
        CHECK(q.phi <= M_PI);
    }
}
