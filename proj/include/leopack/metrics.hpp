#pragma once

#include <vector>

#include "leopack/geometry.hpp"
#include "leopack/spiral.hpp"

namespace leopack {

// Weighted shape difference between the observed object and the template.
struct ShapeDifference {
    double e_in = 0.0;   // mm, packed part vs first s template points
    double e_out = 0.0;  // mm, remaining template vs skeleton correspondences
    double e = 0.0;      // mm, w*e_in + (1-w)*e_out
    double w = 0.0;      // s/M
    int s = 1;           // split
    int loop_index = 0;
    bool skeleton_degraded = false;  // correspondence fell back to the tail
};

// Average minimum distance from each point of P to the first s template
// points. Returns 0 for an empty cloud.
double error_inside(const PointCloud& inside, const ReferenceTemplate& tpl,
                    int s);

// Average distance between template points s..M and their skeleton
// correspondences. Returns 0 for an empty skeleton (task end). When the
// skeleton is too short for a correspondence the tail is used as the match
// and `degraded` (if given) is set.
double error_outside(const OrderedSkeleton& skeleton,
                     const ReferenceTemplate& tpl, int s,
                     bool* degraded = nullptr);

ShapeDifference shape_difference(const PointCloud& inside,
                                 const OrderedSkeleton& skeleton,
                                 const ReferenceTemplate& tpl, int s);

struct SimilarityStats {
    std::vector<double> distances;  // D, per inside point
    double mean = 0.0;              // mu
    double variance = 0.0;          // sigma^2, unbiased
};

// Per-point minimum distance to the full template plus sample mean/variance.
SimilarityStats similarity_stats(const PointCloud& inside,
                                 const ReferenceTemplate& tpl);

}  // namespace leopack
