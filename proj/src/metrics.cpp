#include "leopack/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace leopack {

namespace {

double min_dist_to_prefix(const Point3& p, const ReferenceTemplate& tpl,
                          int s) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < s; ++j)
        best = std::min(best, (p - tpl.points[std::size_t(j)]).norm());
    return best;
}

}  // namespace

double error_inside(const PointCloud& inside, const ReferenceTemplate& tpl,
                    int s) {
    if (s < 1) throw OutOfRange("split must be >= 1");
    s = std::min(s, int(tpl.size()));
    if (inside.empty()) return 0.0;
    double acc = 0.0;
    for (const auto& p : inside) acc += min_dist_to_prefix(p, tpl, s);
    return acc / double(inside.size());
}

double error_outside(const OrderedSkeleton& skeleton,
                     const ReferenceTemplate& tpl, int s, bool* degraded) {
    if (degraded) *degraded = false;
    if (skeleton.empty()) return 0.0;
    const int m = int(tpl.size());
    s = std::clamp(s, 1, m);
    double acc = 0.0;
    int count = 0;
    const double skel_len = skeleton.length();
    for (int i = s - 1; i < m; ++i) {
        const double remaining = tpl.total_length() - tpl.cum_len[std::size_t(i)];
        Point3 match;
        if (remaining >= skel_len) {
            match = skeleton.points.front();  // perception loss: tail match
            if (degraded) *degraded = true;
        } else {
            match = skeleton.point_from_end(remaining);
        }
        acc += (tpl.points[std::size_t(i)] - match).norm();
        ++count;
    }
    return acc / double(count);
}

ShapeDifference shape_difference(const PointCloud& inside,
                                 const OrderedSkeleton& skeleton,
                                 const ReferenceTemplate& tpl, int s) {
    ShapeDifference d;
    d.s = std::clamp(s, 1, int(tpl.size()));
    d.w = double(d.s) / double(tpl.size());
    d.e_in = error_inside(inside, tpl, d.s);
    d.e_out = error_outside(skeleton, tpl, d.s, &d.skeleton_degraded);
    d.e = d.w * d.e_in + (1.0 - d.w) * d.e_out;
    return d;
}

SimilarityStats similarity_stats(const PointCloud& inside,
                                 const ReferenceTemplate& tpl) {
    if (inside.empty()) throw EmptyCloud("similarity_stats on empty cloud");
    SimilarityStats stats;
    stats.distances.reserve(inside.size());
    for (const auto& p : inside)
        stats.distances.push_back(min_dist_to_prefix(p, tpl, int(tpl.size())));
    double acc = 0.0;
    for (double d : stats.distances) acc += d;
    stats.mean = acc / double(stats.distances.size());
    if (stats.distances.size() > 1) {
        double ss = 0.0;
        for (double d : stats.distances) ss += (d - stats.mean) * (d - stats.mean);
        stats.variance = ss / double(stats.distances.size() - 1);
    }
    return stats;
}

}  // namespace leopack
