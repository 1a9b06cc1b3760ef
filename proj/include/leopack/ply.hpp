#pragma once

#include <iosfwd>
#include <string>

#include "leopack/geometry.hpp"

namespace leopack {

// ASCII PLY with float x,y,z vertex properties (mm). Ordered polylines
// (skeletons, templates) carry a `comment ordered=true` header line.

void write_ply(std::ostream& os, const PointCloud& cloud, bool ordered = false);
void write_ply_file(const std::string& path, const PointCloud& cloud,
                    bool ordered = false);

struct PlyData {
    PointCloud points;
    bool ordered = false;
};

PlyData read_ply(std::istream& is);
PlyData read_ply_file(const std::string& path);

}  // namespace leopack
