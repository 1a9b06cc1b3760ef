#pragma once

#include <cstddef>
#include <vector>

#include "leopack/geometry.hpp"

namespace leopack {

// One angular bin of the clockwise polar sweep around the box center.
struct RaySection {
    int ray_index = 0;       // bin index in the sweep, 0..N-1
    double angle = 0.0;      // clockwise angle from i_B, radians, bin center
    Point3 inner;            // member with the smallest horizontal radius
    Point3 outer;            // member with the largest horizontal radius
    PointCloud members;      // points assigned to this bin (kept cluster only)
    bool multi_cluster = false;  // the ray crossed the rod more than once
};

struct PerceptionResult {
    PointCloud inside;          // P: feedback points inside the box
    OrderedSkeleton skeleton;   // P^O: ordered centerline of the outside part
    std::vector<RaySection> sections;
    std::size_t outside_count = 0;  // smoothed points outside the box
    double est_length = 0.0;    // l_O estimate, mm
    double est_width = 0.0;     // d_O estimate, mm
};

struct PerceptionParams {
    double neighbor_radius = 5.0;  // mm, smoothing neighborhood
    double voxel = 4.0;            // mm, downsample cell size
    int rays = 180;                // N, 2 degree interval
    std::size_t min_width_members = 5;   // sections used for the width estimate
    double cluster_gap = 60.0;     // mm, radial gap separating fold clusters
};

// Distance-weighted smoothing (weights 1/(1+dist)) followed by one centroid
// per voxel cell. Empty input passes through.
PointCloud preprocess(const PointCloud& raw, double neighbor_radius, double voxel);

// Partition by the box footprint; exhaustive and disjoint.
std::pair<PointCloud, PointCloud> split_by_box(const PointCloud& cloud,
                                               const BoxSpec& box);

// Assign outside points to N clockwise angular bins about the box center and
// pick per-bin inner/outer boundary points. Empty bins are omitted; bins are
// reported in a contiguous clockwise run starting after the widest empty gap.
std::vector<RaySection> polar_sections(const PointCloud& outside,
                                       const BoxSpec& box, int rays,
                                       double cluster_gap = 60.0);

// One skeleton point per adjacent-ray pair: the centroid of the union of the
// two sections' members.
OrderedSkeleton extract_skeleton(const std::vector<RaySection>& sections);

// Eq-style geometry estimates: length from the skeleton polyline, width from
// the mean inner-to-outer boundary distance.
std::pair<double, double> estimate_geometry(const PerceptionResult& result,
                                            std::size_t min_width_members = 5);

// Full pipeline over a raw cloud in F_B coordinates.
PerceptionResult perceive(const PointCloud& raw, const BoxSpec& box,
                          const PerceptionParams& params = {});

}  // namespace leopack
