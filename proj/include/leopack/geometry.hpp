#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace leopack {

// All lengths are millimeters, all angles radians. The world frame F_B has
// its origin at the box-bottom center, x along the box's long side, z up.

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3& operator-=(const Vec3& o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    double horizontal_norm() const { return std::hypot(x, y); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

using Point3 = Vec3;
using PointCloud = std::vector<Point3>;

// Ordered centerline estimate of the object part outside the box.
struct OrderedSkeleton {
    std::vector<Point3> points;

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }

    // Sum of consecutive Euclidean distances.
    double length() const;
    // Cumulative arc length to each point (first entry 0).
    std::vector<double> cumulative_lengths() const;
    // Point at arc distance `back` measured back from the last point,
    // linearly interpolated on the polyline.
    Point3 point_from_end(double back) const;
};

// Normalize an angle into (-pi, pi].
double normalize_angle(double theta);

// 4-DOF effector pose: position plus yaw about the vertical.
struct Pose4 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double theta = 0.0;

    Pose4() = default;
    Pose4(double x_, double y_, double z_, double t)
        : x(x_), y(y_), z(z_), theta(normalize_angle(t)) {}

    Vec3 position() const { return {x, y, z}; }
};

// Right-handed orthonormal triad with k pointing vertically toward the table.
struct FrameTriad {
    Vec3 i, j, k;

    bool is_orthonormal(double tol = 1e-9) const;
};

enum class Material { NL, PUF, SCF, PEF, Custom };

const char* material_name(Material m);
Material material_from_name(const std::string& name);

struct ObjectSpec {
    Material material = Material::Custom;
    double length = 0.0;          // l_O, mm
    double diameter = 0.0;        // d_O, mm
    double youngs_modulus = 0.0;  // MPa
    double density = 0.0;         // kg/m^3

    bool operator==(const ObjectSpec&) const = default;
    void validate() const;
};

// Material catalog (density kg/m^3, Young's modulus MPa).
ObjectSpec make_object(Material m, double length, double diameter);

struct BoxSpec {
    double length = 0.0;  // l_B, mm (long side, along x)
    double width = 0.0;   // w_B, mm (short side, along y)
    double height = 0.0;  // h_B, mm (wall height)

    bool operator==(const BoxSpec&) const = default;
    void validate() const;
    bool inside_footprint(const Point3& p) const {
        return std::abs(p.x) <= length / 2 && std::abs(p.y) <= width / 2;
    }
    double corner_radius() const { return std::hypot(length / 2, width / 2); }
};

// Error families -----------------------------------------------------------

struct DegenerateTangent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidDims : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CapacityExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadSampleCount : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct OutOfRange : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SkeletonTooShort : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptyCloud : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TooFewSections : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct EmptySkeleton : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotEnoughPackedLength : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MissingReference : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Frame construction -------------------------------------------------------

// Object body frame at skeleton index i (0-based, i+1 must exist): k points
// vertically down, j is horizontal and perpendicular to the local tangent,
// i = j x k stays horizontal even when the tangent tilts out of plane.
FrameTriad body_frame_from_tangent(const Vec3& tangent);
FrameTriad body_frame(const OrderedSkeleton& skeleton, std::size_t i);

}  // namespace leopack
