#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace attrecon {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;

/// Raised when an operation needs a nonzero quaternion and gets (numerically) zero.
class DegenerateQuaternionError : public std::domain_error {
public:
    explicit DegenerateQuaternionError(const std::string& what) : std::domain_error(what) {}
};

/**
 * Quaternion q = s + eta with scalar part s and vector part eta.
 *
 * No unit-norm constraint is enforced: the iterates of the functional
 * iteration are non-unit polynomials. Only values that are handed out as an
 * attitude are normalized (see require_attitude()).
 */
struct Quaternion {
    double s = 0.0;
    Vec3 eta = Vec3::Zero();

    Quaternion() = default;
    Quaternion(double scalar, const Vec3& vec) : s(scalar), eta(vec) {}
    Quaternion(double w, double x, double y, double z) : s(w), eta(x, y, z) {}

    static Quaternion identity() { return {1.0, Vec3::Zero()}; }
    static Quaternion Zero() { return {}; }
    /// Vector quaternion with zero scalar part.
    static Quaternion pure(const Vec3& v) { return {0.0, v}; }
    static Quaternion from_vector(const Eigen::Vector4d& v) { return {v(0), v(1), v(2), v(3)}; }

    double squared_norm() const { return s * s + eta.squaredNorm(); }
    double norm() const;
    Quaternion conjugate() const { return {s, -eta}; }
    Eigen::Vector4d to_vector() const { return {s, eta.x(), eta.y(), eta.z()}; }
    bool is_finite() const { return std::isfinite(s) && eta.allFinite(); }

    Quaternion& operator+=(const Quaternion& o) {
        s += o.s;
        eta += o.eta;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& o) {
        s -= o.s;
        eta -= o.eta;
        return *this;
    }
    Quaternion& operator*=(double k) {
        s *= k;
        eta *= k;
        return *this;
    }
};

inline Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
inline Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
inline Quaternion operator-(const Quaternion& a) { return {-a.s, -a.eta}; }
inline Quaternion operator*(Quaternion a, double k) { return a *= k; }
inline Quaternion operator*(double k, Quaternion a) { return a *= k; }

/// Hamilton product a ∘ b.
inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) {
    return {a.s * b.s - a.eta.dot(b.eta), a.s * b.eta + b.s * a.eta + a.eta.cross(b.eta)};
}

/// q ∘ (0, v), the product used by the kinematics q̇ = ½ q ∘ ω.
inline Quaternion quat_mul_pure(const Quaternion& q, const Vec3& v) {
    return {-q.eta.dot(v), q.s * v + q.eta.cross(v)};
}

inline Quaternion operator*(const Quaternion& a, const Quaternion& b) { return quat_mul(a, b); }

/// [q]^+ with q ∘ p = [q]^+ p.
Mat4 left_product_matrix(const Quaternion& q);
/// [q]^- with p ∘ q = [q]^- p.
Mat4 right_product_matrix(const Quaternion& q);

Mat3 skew(const Vec3& v);

/// Throws DegenerateQuaternionError for a zero (or non-finite) norm.
Quaternion quat_normalize(const Quaternion& q);

/// Unit quaternion (2 + g) / sqrt(4 + |g|^2) of a Rodrigues vector g = 2 tan(θ/2) û.
Quaternion rodrigues_to_quat(const Vec3& g);

/// Quaternion exponential of a rotation vector θ û: (cos θ/2, sin θ/2 û).
Quaternion rotvec_to_quat(const Vec3& v);

inline constexpr double kAttitudeNormTolerance = 1e-9;

bool is_attitude(const Quaternion& q, double tol = kAttitudeNormTolerance);

/// Throws std::invalid_argument if | |q| - 1 | exceeds tol.
void require_attitude(const Quaternion& q, const char* what, double tol = kAttitudeNormTolerance);

} // namespace attrecon
