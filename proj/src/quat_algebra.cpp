#include "attrecon/quat_algebra.hpp"

#include <cmath>
#include <sstream>

namespace attrecon {

double Quaternion::norm() const { return std::sqrt(squared_norm()); }

Mat3 skew(const Vec3& v) {
    Mat3 m;
    m << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return m;
}

Mat4 left_product_matrix(const Quaternion& q) {
    Mat4 m;
    m(0, 0) = q.s;
    m.block<1, 3>(0, 1) = -q.eta.transpose();
    m.block<3, 1>(1, 0) = q.eta;
    m.block<3, 3>(1, 1) = q.s * Mat3::Identity() + skew(q.eta);
    return m;
}

Mat4 right_product_matrix(const Quaternion& q) {
    Mat4 m;
    m(0, 0) = q.s;
    m.block<1, 3>(0, 1) = -q.eta.transpose();
    m.block<3, 1>(1, 0) = q.eta;
    m.block<3, 3>(1, 1) = q.s * Mat3::Identity() - skew(q.eta);
    return m;
}

Quaternion quat_normalize(const Quaternion& q) {
    const double n = q.norm();
    if (!(n > 0.0) || !std::isfinite(n)) {
        throw DegenerateQuaternionError("quat_normalize: quaternion has zero or non-finite norm");
    }
    return q * (1.0 / n);
}

Quaternion rodrigues_to_quat(const Vec3& g) {
    const double scale = 1.0 / std::sqrt(4.0 + g.squaredNorm());
    return {2.0 * scale, g * scale};
}

Quaternion rotvec_to_quat(const Vec3& v) {
    const double angle = v.norm();
    if (angle < 1e-8) {
        const double a2 = angle * angle;
        return {1.0 - a2 / 8.0, v * (0.5 - a2 / 48.0)};
    }
    const double half = 0.5 * angle;
    return {std::cos(half), v * (std::sin(half) / angle)};
}

bool is_attitude(const Quaternion& q, double tol) { return std::abs(q.norm() - 1.0) <= tol; }

void require_attitude(const Quaternion& q, const char* what, double tol) {
    if (!is_attitude(q, tol)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << what << ": expected a unit quaternion, got norm " << q.norm();
        throw std::invalid_argument(msg.str());
    }
}

} // namespace attrecon
