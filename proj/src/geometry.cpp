#include "leopack/geometry.hpp"

#include <algorithm>

namespace leopack {

double OrderedSkeleton::length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i)
        total += (points[i] - points[i - 1]).norm();
    return total;
}

std::vector<double> OrderedSkeleton::cumulative_lengths() const {
    std::vector<double> cum(points.size(), 0.0);
    for (std::size_t i = 1; i < points.size(); ++i)
        cum[i] = cum[i - 1] + (points[i] - points[i - 1]).norm();
    return cum;
}

Point3 OrderedSkeleton::point_from_end(double back) const {
    if (points.empty()) throw EmptySkeleton("point_from_end on empty skeleton");
    if (back <= 0.0) return points.back();
    double total = length();
    if (back >= total)
        throw SkeletonTooShort("arc distance " + std::to_string(back) +
                               " exceeds skeleton length " + std::to_string(total));
    double target = total - back;
    double acc = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        double seg = (points[i] - points[i - 1]).norm();
        if (acc + seg >= target) {
            double t = seg > 0 ? (target - acc) / seg : 0.0;
            return points[i - 1] + (points[i] - points[i - 1]) * t;
        }
        acc += seg;
    }
    return points.back();
}

double normalize_angle(double theta) {
    while (theta > M_PI) theta -= 2 * M_PI;
    while (theta <= -M_PI) theta += 2 * M_PI;
    return theta;
}

bool FrameTriad::is_orthonormal(double tol) const {
    if (std::abs(i.norm() - 1) > tol) return false;
    if (std::abs(j.norm() - 1) > tol) return false;
    if (std::abs(k.norm() - 1) > tol) return false;
    if (std::abs(i.dot(j)) > tol) return false;
    if (std::abs(j.dot(k)) > tol) return false;
    if (std::abs(k.dot(i)) > tol) return false;
    Vec3 rh = j.cross(k);
    return (rh - i).norm() <= 10 * tol;
}

const char* material_name(Material m) {
    switch (m) {
        case Material::NL: return "NL";
        case Material::PUF: return "PUF";
        case Material::SCF: return "SCF";
        case Material::PEF: return "PEF";
        default: return "custom";
    }
}

Material material_from_name(const std::string& name) {
    if (name == "NL") return Material::NL;
    if (name == "PUF") return Material::PUF;
    if (name == "SCF") return Material::SCF;
    if (name == "PEF") return Material::PEF;
    if (name == "custom") return Material::Custom;
    throw InvalidDims("unknown material: " + name);
}

void ObjectSpec::validate() const {
    if (!(length > 0)) throw InvalidDims("object length must be > 0");
    if (!(diameter > 0)) throw InvalidDims("object diameter must be > 0");
    if (!(youngs_modulus > 0)) throw InvalidDims("youngs_modulus must be > 0");
    if (!(density > 0)) throw InvalidDims("density must be > 0");
}

ObjectSpec make_object(Material m, double length, double diameter) {
    ObjectSpec o;
    o.material = m;
    o.length = length;
    o.diameter = diameter;
    switch (m) {
        case Material::NL:
            o.density = 67.23;
            o.youngs_modulus = 0.032;
            break;
        case Material::PUF:
            o.density = 38.76;
            o.youngs_modulus = 0.185;
            break;
        case Material::SCF:
            o.density = 62.50;
            o.youngs_modulus = 0.325;
            break;
        case Material::PEF:
            o.density = 16.17;
            o.youngs_modulus = 0.992;
            break;
        case Material::Custom:
            break;
    }
    return o;
}

void BoxSpec::validate() const {
    if (!(width > 0)) throw InvalidDims("box width must be > 0");
    if (!(length >= width)) throw InvalidDims("box length must be >= width");
    if (!(height > 0)) throw InvalidDims("box height must be > 0");
}

FrameTriad body_frame_from_tangent(const Vec3& tangent) {
    if (tangent.norm() < 1e-9)
        throw DegenerateTangent("consecutive skeleton points coincide");
    Vec3 k{0, 0, -1};
    Vec3 t = tangent.normalized();
    Vec3 j = k.cross(t);
    double jn = j.norm();
    if (jn < 1e-9) throw DegenerateTangent("tangent is vertical");
    j = j / jn;
    Vec3 i = j.cross(k);
    return FrameTriad{i, j, k};
}

FrameTriad body_frame(const OrderedSkeleton& skeleton, std::size_t i) {
    if (i + 1 >= skeleton.points.size())
        throw OutOfRange("body_frame index out of range");
    return body_frame_from_tangent(skeleton.points[i + 1] - skeleton.points[i]);
}

}  // namespace leopack
