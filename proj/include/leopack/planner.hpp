#pragma once

#include <optional>
#include <vector>

#include "leopack/actions.hpp"
#include "leopack/geometry.hpp"
#include "leopack/spiral.hpp"

namespace leopack {

// Workspace halves: Left owns y > -overlap, Right owns y < +overlap.
constexpr double kWorkspaceOverlap = 10.0;  // mm

bool in_workspace_half(const Point3& p, ArmId arm, double extra_band = 0.0);

// Reference points and poses for one action planner loop.
struct ReferenceSet {
    std::size_t placing_index = 0;  // k, 0-based template index
    Point3 placing;                 // p^L = p*_k
    Pose4 placing_pose;
    Point3 grasping;  // p^G, corresponding point on the skeleton
    Pose4 grasping_pose;
    std::optional<Point3> fixing;  // p^F, absent in early loops
    std::optional<Pose4> fixing_pose;
};

// One placing index per template lane: the sample nearest to horizontal
// distance delta_l from the j_B axis on the side the lane travels toward.
// Lanes whose sweep never reaches that line are dropped; a straight-only
// template falls back to its single nearest sample.
std::vector<std::size_t> placing_indices(const ReferenceTemplate& tpl,
                                         double delta_l);

// p^G: the skeleton point whose arc distance to the skeleton end matches the
// template length remaining after index k.
Point3 grasping_point(const ReferenceTemplate& tpl, std::size_t k,
                      const OrderedSkeleton& skeleton);

// p^F: template point at arc distance delta_f before p*_k, preferring the
// candidate inside the assistant arm's workspace half.
Point3 fixing_point(const ReferenceTemplate& tpl, std::size_t k, double delta_f,
                    ArmId assistant_side);

// Pose with the gripper jaw axis across the local tangent.
Pose4 reference_pose(const Point3& point, const FrameTriad& frame);

// Collision-free approach: climb above the nearest skeleton point, follow the
// skeleton at clearance dh, stop above the target.
std::vector<Pose4> hover_follow_path(const OrderedSkeleton& skeleton,
                                     const Pose4& start, const Point3& target,
                                     double dh, double rod_diameter);

}  // namespace leopack
