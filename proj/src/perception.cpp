#include "leopack/perception.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <tuple>

namespace leopack {

namespace {

bool lex_less(const Point3& a, const Point3& b) {
    return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
}

PointCloud sorted_copy(const PointCloud& cloud) {
    PointCloud out = cloud;
    std::sort(out.begin(), out.end(), lex_less);
    return out;
}

using Cell = std::tuple<std::int64_t, std::int64_t, std::int64_t>;

Cell cell_of(const Point3& p, double size) {
    return {std::int64_t(std::floor(p.x / size)),
            std::int64_t(std::floor(p.y / size)),
            std::int64_t(std::floor(p.z / size))};
}

PointCloud weighted_smooth(const PointCloud& cloud, double radius) {
    if (cloud.empty() || radius <= 0) return cloud;
    std::map<Cell, std::vector<std::size_t>> grid;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        grid[cell_of(cloud[i], radius)].push_back(i);

    PointCloud out;
    out.reserve(cloud.size());
    for (const auto& p : cloud) {
        auto [cx, cy, cz] = cell_of(p, radius);
        Vec3 acc{0, 0, 0};
        double wsum = 0.0;
        for (std::int64_t dx = -1; dx <= 1; ++dx)
            for (std::int64_t dy = -1; dy <= 1; ++dy)
                for (std::int64_t dz = -1; dz <= 1; ++dz) {
                    auto it = grid.find({cx + dx, cy + dy, cz + dz});
                    if (it == grid.end()) continue;
                    for (std::size_t idx : it->second) {
                        double d = (cloud[idx] - p).norm();
                        if (d > radius) continue;
                        double w = 1.0 / (1.0 + d);
                        acc += cloud[idx] * w;
                        wsum += w;
                    }
                }
        out.push_back(acc / wsum);
    }
    return out;
}

PointCloud voxel_downsample(const PointCloud& cloud, double voxel) {
    if (cloud.empty() || voxel <= 0) return cloud;
    std::map<Cell, std::pair<Vec3, std::size_t>> cells;
    for (const auto& p : cloud) {
        auto& slot = cells[cell_of(p, voxel)];
        slot.first += p;
        slot.second += 1;
    }
    PointCloud out;
    out.reserve(cells.size());
    for (const auto& [cell, acc] : cells)
        out.push_back(acc.first / double(acc.second));
    return out;
}

double clockwise_angle(const Point3& p) {
    double a = std::atan2(-p.y, p.x);
    if (a < 0) a += 2 * M_PI;
    return a;
}

// Radial clusters of one bin's members, split at gaps wider than cluster_gap.
std::vector<PointCloud> radial_clusters(PointCloud members, double cluster_gap) {
    std::sort(members.begin(), members.end(),
              [](const Point3& a, const Point3& b) {
                  return a.horizontal_norm() < b.horizontal_norm();
              });
    std::vector<PointCloud> clusters;
    clusters.emplace_back();
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (i > 0 && members[i].horizontal_norm() -
                             members[i - 1].horizontal_norm() >
                         cluster_gap)
            clusters.emplace_back();
        clusters.back().push_back(members[i]);
    }
    return clusters;
}

double mean_radius(const PointCloud& pts) {
    double acc = 0.0;
    for (const auto& p : pts) acc += p.horizontal_norm();
    return acc / double(pts.size());
}

}  // namespace

PointCloud preprocess(const PointCloud& raw, double neighbor_radius,
                      double voxel) {
    return voxel_downsample(weighted_smooth(sorted_copy(raw), neighbor_radius),
                            voxel);
}

std::pair<PointCloud, PointCloud> split_by_box(const PointCloud& cloud,
                                               const BoxSpec& box) {
    PointCloud inside, outside;
    for (const auto& p : cloud)
        (box.inside_footprint(p) ? inside : outside).push_back(p);
    return {inside, outside};
}

std::vector<RaySection> polar_sections(const PointCloud& outside,
                                       const BoxSpec& box, int rays,
                                       double cluster_gap) {
    (void)box;  // origin is the box center, the frame origin
    if (rays < 8) throw InvalidDims("need at least 8 rays");
    if (outside.empty()) throw EmptyCloud("polar_sections on empty cloud");

    const double step = 2 * M_PI / rays;
    std::vector<PointCloud> bins(rays);
    for (const auto& p : sorted_copy(outside)) {
        int b = int(clockwise_angle(p) / step);
        if (b >= rays) b = rays - 1;
        bins[b].push_back(p);
    }

    std::vector<int> populated;
    for (int b = 0; b < rays; ++b)
        if (!bins[b].empty()) populated.push_back(b);

    // Start the clockwise run after the widest empty gap so that a rod
    // crossing the zero ray still yields one contiguous ordered sweep.
    int n = int(populated.size());
    int start = 0;
    int widest = -1;
    for (int i = 0; i < n; ++i) {
        int prev = populated[(i + n - 1) % n];
        int gap = (populated[i] - prev + rays) % rays;
        if (gap > widest) {
            widest = gap;
            start = i;
        }
    }

    struct BinClusters {
        int bin;
        std::vector<PointCloud> clusters;
    };
    std::vector<BinClusters> ordered;
    for (int i = 0; i < n; ++i) {
        int b = populated[(start + i) % n];
        ordered.push_back({b, radial_clusters(bins[b], cluster_gap)});
    }

    // Reference radius for fold disambiguation: nearest single-cluster bin.
    std::vector<double> ref(n, -1.0);
    for (int i = 0; i < n; ++i)
        if (ordered[i].clusters.size() == 1)
            ref[i] = mean_radius(ordered[i].clusters[0]);
    double global = 0.0;
    int cnt = 0;
    for (double r : ref)
        if (r >= 0) {
            global += r;
            ++cnt;
        }
    global = cnt ? global / cnt : 0.0;

    std::vector<RaySection> sections;
    sections.reserve(n);
    for (int i = 0; i < n; ++i) {
        double want = global;
        for (int d = 1; d < n; ++d) {
            if (i - d >= 0 && ref[i - d] >= 0) {
                want = ref[i - d];
                break;
            }
            if (i + d < n && ref[i + d] >= 0) {
                want = ref[i + d];
                break;
            }
        }
        const auto& bc = ordered[i];
        const PointCloud* best = &bc.clusters[0];
        double best_err = std::abs(mean_radius(*best) - want);
        for (const auto& c : bc.clusters) {
            double err = std::abs(mean_radius(c) - want);
            if (err < best_err) {
                best = &c;
                best_err = err;
            }
        }
        RaySection sec;
        sec.ray_index = bc.bin;
        sec.angle = (bc.bin + 0.5) * step;
        sec.members = *best;
        sec.multi_cluster = bc.clusters.size() > 1;
        sec.inner = sec.members.front();
        sec.outer = sec.members.front();
        for (const auto& p : sec.members) {
            if (p.horizontal_norm() < sec.inner.horizontal_norm()) sec.inner = p;
            if (p.horizontal_norm() > sec.outer.horizontal_norm()) sec.outer = p;
        }
        sections.push_back(std::move(sec));
    }
    return sections;
}

OrderedSkeleton extract_skeleton(const std::vector<RaySection>& sections) {
    if (sections.size() < 2)
        throw TooFewSections("skeleton needs at least 2 sections");
    OrderedSkeleton skel;
    skel.points.reserve(sections.size() - 1);
    for (std::size_t i = 1; i < sections.size(); ++i) {
        Vec3 acc{0, 0, 0};
        std::size_t m = 0;
        for (const auto* sec : {&sections[i - 1], &sections[i]}) {
            for (const auto& p : sec->members) acc += p;
            m += sec->members.size();
        }
        skel.points.push_back(acc / double(m));
    }
    return skel;
}

std::pair<double, double> estimate_geometry(const PerceptionResult& result,
                                            std::size_t min_width_members) {
    double length = result.skeleton.length();
    double width = 0.0;
    std::size_t used = 0;
    for (const auto& sec : result.sections) {
        if (sec.members.size() < min_width_members) continue;
        width += (sec.outer - sec.inner).norm();
        ++used;
    }
    if (used == 0) {
        for (const auto& sec : result.sections)
            width += (sec.outer - sec.inner).norm();
        used = result.sections.size();
    }
    if (used > 0) width /= double(used);
    return {length, width};
}

PerceptionResult perceive(const PointCloud& raw, const BoxSpec& box,
                          const PerceptionParams& params) {
    PerceptionResult result;
    PointCloud smoothed = weighted_smooth(sorted_copy(raw), params.neighbor_radius);
    auto [inside, outside] = split_by_box(smoothed, box);
    result.inside = voxel_downsample(inside, params.voxel);
    result.outside_count = outside.size();
    if (!outside.empty()) {
        result.sections =
            polar_sections(outside, box, params.rays, params.cluster_gap);
        if (result.sections.size() >= 2)
            result.skeleton = extract_skeleton(result.sections);
        auto [l, w] = estimate_geometry(result, params.min_width_members);
        result.est_length = l;
        result.est_width = w;
    }
    return result;
}

}  // namespace leopack
