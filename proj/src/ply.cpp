#include "leopack/ply.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace leopack {

void write_ply(std::ostream& os, const PointCloud& cloud, bool ordered) {
    os << "ply\n";
    os << "format ascii 1.0\n";
    if (ordered) os << "comment ordered=true\n";
    os << "element vertex " << cloud.size() << "\n";
    os << "property float x\n";
    os << "property float y\n";
    os << "property float z\n";
    os << "end_header\n";
    char buf[96];
    for (const auto& p : cloud) {
        std::snprintf(buf, sizeof(buf), "%.6f %.6f %.6f\n", p.x, p.y, p.z);
        os << buf;
    }
}

void write_ply_file(const std::string& path, const PointCloud& cloud,
                    bool ordered) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open " + path + " for writing");
    write_ply(os, cloud, ordered);
}

PlyData read_ply(std::istream& is) {
    PlyData out;
    std::string line;
    if (!std::getline(is, line) || line != "ply")
        throw std::runtime_error("not a PLY file");
    std::size_t n = 0;
    while (std::getline(is, line)) {
        if (line == "end_header") break;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "comment") {
            std::string rest;
            ls >> rest;
            if (rest == "ordered=true") out.ordered = true;
        } else if (tok == "element") {
            std::string name;
            ls >> name >> n;
            if (name != "vertex")
                throw std::runtime_error("unsupported PLY element: " + name);
        } else if (tok == "format") {
            std::string fmt;
            ls >> fmt;
            if (fmt != "ascii")
                throw std::runtime_error("only ascii PLY supported");
        }
    }
    out.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Point3 p;
        if (!(is >> p.x >> p.y >> p.z))
            throw std::runtime_error("truncated PLY vertex list");
        out.points.push_back(p);
    }
    return out;
}

PlyData read_ply_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return read_ply(is);
}

}  // namespace leopack
