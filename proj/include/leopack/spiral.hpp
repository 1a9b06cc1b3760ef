#pragma once

#include <cstddef>
#include <vector>

#include "leopack/geometry.hpp"

namespace leopack {

// Offline reference template: the target centerline inside the box, shaped as
// a spiral of straight segments and alternating concentric semicircles, lying
// in the plane z = d_O/2 and sampled at uniform arc spacing.
struct ReferenceTemplate {
    std::vector<Point3> points;   // M samples
    std::vector<double> cum_len;  // arc length to each sample, cum_len[0] = 0
    int split = 1;                // s: number of points in the packed part, 1..M
    BoxSpec box;
    ObjectSpec object;
    double capacity = 0.0;  // spiral capacity of (box, d_O)

    std::size_t size() const { return points.size(); }
    double total_length() const { return cum_len.empty() ? 0.0 : cum_len.back(); }
    double spacing() const {
        return points.size() > 1 ? total_length() / double(points.size() - 1) : 0.0;
    }
};

// Closed-form maximum object length the spiral can place in the box:
// the aperiodic straight plus, per semicircle j = 1..floor(w_B/d_O), one
// straight of length l_B - w_B + d_O/2 and one arc of length pi(w_B - d_O j)/2.
double max_capacity(const BoxSpec& box, double rod_diameter);

// Default sample count: <= 5 mm spacing, at least 100 samples.
int default_sample_count(double object_length);

ReferenceTemplate generate_template(const BoxSpec& box, const ObjectSpec& object,
                                    int samples);

// Point on the template at normalized arc position lambda in [0, 1].
Point3 point_at(const ReferenceTemplate& tpl, double lambda);

// Smallest split s (1..M) such that the first s points cover packed_length of
// arc; s = 1 when nothing is packed.
int set_split(const ReferenceTemplate& tpl, double packed_length);

// Point on the skeleton whose arc distance to the skeleton end equals the
// template arc length remaining after index i (0-based).
Point3 corresponding_point(const ReferenceTemplate& tpl, std::size_t i,
                           const OrderedSkeleton& skeleton);

// Template frame at sample i (0-based, i+1 must exist): z down, x toward the
// next sample, y by the right-hand rule.
FrameTriad template_frame(const ReferenceTemplate& tpl, std::size_t i);

}  // namespace leopack
