#pragma once

#include <Eigen/Core>

// Coordinate systems of the sonar projection: the sonar measures range r,
// azimuth theta and elevation phi; displays collapse elevation onto the
// zero-elevation (r, theta) plane.

namespace sonarsim {

struct SphericalPoint {
    double r = 0.0;      // range, m
    double theta = 0.0;  // azimuth, rad, in [-pi, pi]
    double phi = 0.0;    // elevation (polar angle from +z), rad, in [0, pi]
};

struct PolarPoint {
    double r = 0.0;      // range, m
    double theta = 0.0;  // bearing, rad
};

/// r = |p|, theta = atan2(y, x), phi = atan2(sqrt(x^2+y^2), z).
/// The origin maps to (0, 0, 0) so empty-depth samples pass through silently.
SphericalPoint cartesian_to_spherical(const Eigen::Vector3d& p);

/// Inverse of cartesian_to_spherical away from the z-axis.
Eigen::Vector3d spherical_to_cartesian(const SphericalPoint& q);

/// Zero-elevation projection: (r cos theta, r sin theta).
Eigen::Vector2d polar_to_cartesian(const PolarPoint& q);

}  // namespace sonarsim
