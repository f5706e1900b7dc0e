#include "sonarsim/geometry.hpp"

#include <cmath>

namespace sonarsim {

SphericalPoint cartesian_to_spherical(const Eigen::Vector3d& p) {
    const double r = p.norm();
    if (r == 0.0) {
        return {0.0, 0.0, 0.0};
    }
    const double horiz = std::hypot(p.x(), p.y());
    return {r, std::atan2(p.y(), p.x()), std::atan2(horiz, p.z())};
}

Eigen::Vector3d spherical_to_cartesian(const SphericalPoint& q) {
    const double s = std::sin(q.phi);
    return {q.r * s * std::cos(q.theta), q.r * s * std::sin(q.theta),
            q.r * std::cos(q.phi)};
}

Eigen::Vector2d polar_to_cartesian(const PolarPoint& q) {
    return {q.r * std::cos(q.theta), q.r * std::sin(q.theta)};
}

}  // namespace sonarsim
