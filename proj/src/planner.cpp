#include "leopack/planner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace leopack {

bool in_workspace_half(const Point3& p, ArmId arm, double extra_band) {
    const double band = kWorkspaceOverlap + extra_band;
    return arm == ArmId::Left ? p.y > -band : p.y < band;
}

std::vector<std::size_t> placing_indices(const ReferenceTemplate& tpl,
                                         double delta_l) {
    if (delta_l <= 0 || delta_l >= tpl.box.length / 2)
        throw OutOfRange("delta_l must lie in (0, l_B/2)");
    const std::size_t m = tpl.size();

    // One placing point per lane: where the path, heading out toward a short
    // wall, crosses the line |x| = delta_l. Each lane overshoots its straight
    // run slightly into the following turn, so the crossings are detected on
    // the polyline directly; the turn's way back re-crosses the same line
    // inward and is not a placing point.
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        const double a0 = std::abs(tpl.points[i].x);
        const double a1 = std::abs(tpl.points[i + 1].x);
        if (!(a0 < delta_l && a1 >= delta_l)) continue;  // outward only
        const std::size_t best =
            (a1 - delta_l) <= (delta_l - a0) ? i + 1 : i;
        if (out.empty() || best > out.back()) out.push_back(best);
    }

    if (out.empty()) {
        // Short template that turns back before reaching the line: keep the
        // sample nearest the unreached crossing so the planner still has a
        // placing point.
        const Vec3 t = tpl.points[m - 1] - tpl.points[m - 2];
        const double target = (t.x >= 0 ? 1.0 : -1.0) * delta_l;
        std::size_t best = 0;
        double best_err = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < m; ++i) {
            double err = std::abs(tpl.points[i].x - target);
            if (err < best_err) {
                best_err = err;
                best = i;
            }
        }
        out.push_back(best);
    }
    return out;
}

Point3 grasping_point(const ReferenceTemplate& tpl, std::size_t k,
                      const OrderedSkeleton& skeleton) {
    return corresponding_point(tpl, k, skeleton);
}

Point3 fixing_point(const ReferenceTemplate& tpl, std::size_t k, double delta_f,
                    ArmId assistant_side) {
    if (k >= tpl.size()) throw OutOfRange("fixing_point: index out of range");
    const double arc = tpl.cum_len[k];
    if (arc < delta_f)
        throw NotEnoughPackedLength("too little packed arc before p*_k");
    const double total = tpl.total_length();
    const Point3 before = point_at(tpl, (arc - delta_f) / total);
    if (in_workspace_half(before, assistant_side)) return before;
    if (arc + delta_f <= total) {
        const Point3 after = point_at(tpl, (arc + delta_f) / total);
        if (in_workspace_half(after, assistant_side)) return after;
    }
    return before;
}

Pose4 reference_pose(const Point3& point, const FrameTriad& frame) {
    return {point.x, point.y, point.z,
            std::atan2(-frame.j.y, -frame.j.x)};
}

std::vector<Pose4> hover_follow_path(const OrderedSkeleton& skeleton,
                                     const Pose4& start, const Point3& target,
                                     double dh, double rod_diameter) {
    if (skeleton.empty()) throw EmptySkeleton("hover_follow_path needs a skeleton");

    // Clearance height near a horizontal position: above every skeleton
    // vertex within one rod diameter.
    auto clear_z = [&](const Point3& p) {
        double z = p.z;
        for (const auto& v : skeleton.points) {
            double d = std::hypot(v.x - p.x, v.y - p.y);
            if (d <= rod_diameter) z = std::max(z, v.z);
        }
        return z + dh;
    };

    // Entry vertex: nearest to the start position; exit vertex: nearest to
    // the target. Follow the skeleton between the two.
    auto nearest = [&](double x, double y) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < skeleton.size(); ++i) {
            double d = std::hypot(skeleton.points[i].x - x,
                                  skeleton.points[i].y - y);
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return best;
    };
    const std::size_t entry = nearest(start.x, start.y);
    const std::size_t exit = nearest(target.x, target.y);

    std::vector<Pose4> path;
    const long step = exit >= entry ? 1 : -1;
    for (long i = long(entry);; i += step) {
        const Point3& v = skeleton.points[std::size_t(i)];
        std::size_t a = std::size_t(i), b = a;
        if (i + 1 < long(skeleton.size()))
            b = a + 1;
        else if (i > 0)
            b = a, a = std::size_t(i - 1);
        Vec3 tangent = skeleton.points[b] - skeleton.points[a];
        double theta = start.theta;
        if (tangent.horizontal_norm() > 1e-9) {
            FrameTriad f = body_frame_from_tangent(tangent);
            theta = std::atan2(-f.j.y, -f.j.x);
        }
        path.emplace_back(v.x, v.y, clear_z(v), theta);
        if (i == long(exit)) break;
    }
    path.emplace_back(target.x, target.y, clear_z(target),
                      path.back().theta);
    return path;
}

}  // namespace leopack
