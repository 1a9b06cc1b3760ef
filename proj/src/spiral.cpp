#include "leopack/spiral.hpp"

#include <algorithm>
#include <cmath>

namespace leopack {

namespace {

// One analytic piece of the spiral: a straight run or a semicircular arc.
struct Piece {
    enum Kind { Straight, Arc } kind;
    // Straight: start + dir * t for t in [0, len].
    Point3 start;
    Vec3 dir;
    // Arc: center +/- r (sin phi, cos phi, 0), phi in [0, pi]; sign -1 for the
    // odd (C_od) set, +1 for the even (C_ev) set.
    Point3 center;
    double radius = 0.0;
    double sign = 1.0;
    double len = 0.0;

    Point3 at(double s) const {
        if (kind == Straight) return start + dir * s;
        double phi = s / radius;
        return center + Vec3{std::sin(phi), std::cos(phi), 0.0} * (sign * radius);
    }
};

// Builds the analytic piece chain for the full spiral capacity of (box, d_O).
std::vector<Piece> build_pieces(const BoxSpec& box, double d) {
    const double lb = box.length, wb = box.width;
    const double z = d / 2;
    const Point3 c_od{-lb / 2 + wb / 2, 0.0, z};
    const Point3 c_ev{lb / 2 - wb / 2 + d / 2, d / 2, z};
    const double l_line = lb - wb + d / 2;
    const int semis = int(std::floor(wb / d));

    std::vector<Piece> pieces;
    Piece aperiodic;
    aperiodic.kind = Piece::Straight;
    aperiodic.start = {lb / 2, (-wb + d) / 2, z};
    aperiodic.dir = {-1, 0, 0};
    aperiodic.len = lb - wb / 2;
    pieces.push_back(aperiodic);

    for (int j = 1; j <= semis; ++j) {
        const bool odd = (j % 2 == 1);
        const double r = wb / 2 - (d / 2) * j;
        if (r > 0) {
            Piece arc;
            arc.kind = Piece::Arc;
            arc.center = odd ? c_od : c_ev;
            arc.radius = r;
            arc.sign = odd ? -1.0 : 1.0;
            arc.len = M_PI * r;
            pieces.push_back(arc);
        }
        Piece line;
        line.kind = Piece::Straight;
        line.start = odd ? Point3{c_od.x, c_od.y + r, z}
                         : Point3{c_ev.x, c_ev.y - r, z};
        line.dir = odd ? Vec3{1, 0, 0} : Vec3{-1, 0, 0};
        line.len = l_line;
        pieces.push_back(line);
    }
    return pieces;
}

Point3 eval_chain(const std::vector<Piece>& pieces, double s) {
    double acc = 0.0;
    for (const auto& p : pieces) {
        if (s <= acc + p.len || &p == &pieces.back()) {
            return p.at(std::clamp(s - acc, 0.0, p.len));
        }
        acc += p.len;
    }
    return pieces.back().at(pieces.back().len);
}

}  // namespace

double max_capacity(const BoxSpec& box, double rod_diameter) {
    box.validate();
    if (!(rod_diameter > 0)) throw InvalidDims("rod diameter must be > 0");
    if (!(box.width > rod_diameter))
        throw InvalidDims("box width must exceed rod diameter");
    const double lb = box.length, wb = box.width, d = rod_diameter;
    const int semis = int(std::floor(wb / d));
    double total = lb - wb / 2;
    for (int j = 1; j <= semis; ++j)
        total += lb - wb + d / 2 + M_PI * (wb - d * j) / 2;
    return total;
}

int default_sample_count(double object_length) {
    return std::max(100, int(std::lround(object_length / 5.0)));
}

ReferenceTemplate generate_template(const BoxSpec& box, const ObjectSpec& object,
                                    int samples) {
    box.validate();
    object.validate();
    if (samples < 20) throw BadSampleCount("template needs at least 20 samples");
    const double cap = max_capacity(box, object.diameter);
    if (object.length > cap * (1.0 + 1e-9))
        throw CapacityExceeded("object length " + std::to_string(object.length) +
                               " exceeds spiral capacity " + std::to_string(cap));

    auto pieces = build_pieces(box, object.diameter);

    ReferenceTemplate tpl;
    tpl.box = box;
    tpl.object = object;
    tpl.capacity = cap;
    tpl.points.reserve(samples);
    tpl.cum_len.reserve(samples);
    const double h = object.length / double(samples - 1);
    for (int i = 0; i < samples; ++i) {
        double s = std::min(i * h, object.length);
        tpl.points.push_back(eval_chain(pieces, s));
        tpl.cum_len.push_back(s);
    }
    tpl.split = 1;
    return tpl;
}

Point3 point_at(const ReferenceTemplate& tpl, double lambda) {
    if (lambda < 0.0 || lambda > 1.0)
        throw OutOfRange("lambda must lie in [0, 1]");
    const double target = lambda * tpl.total_length();
    const auto& cum = tpl.cum_len;
    auto it = std::lower_bound(cum.begin(), cum.end(), target);
    if (it == cum.begin()) return tpl.points.front();
    std::size_t i = std::size_t(it - cum.begin());
    if (i >= cum.size()) return tpl.points.back();
    double seg = cum[i] - cum[i - 1];
    double t = seg > 0 ? (target - cum[i - 1]) / seg : 0.0;
    return tpl.points[i - 1] + (tpl.points[i] - tpl.points[i - 1]) * t;
}

int set_split(const ReferenceTemplate& tpl, double packed_length) {
    if (packed_length < 0.0 || packed_length > tpl.total_length() * (1 + 1e-9))
        throw OutOfRange("packed length outside [0, l_O]");
    const auto& cum = tpl.cum_len;
    for (std::size_t i = 0; i < cum.size(); ++i)
        if (cum[i] >= packed_length - 1e-9) return int(i) + 1;
    return int(cum.size());
}

Point3 corresponding_point(const ReferenceTemplate& tpl, std::size_t i,
                           const OrderedSkeleton& skeleton) {
    if (i >= tpl.size()) throw OutOfRange("template index out of range");
    if (skeleton.empty()) throw EmptySkeleton("corresponding_point needs a skeleton");
    const double remaining = tpl.total_length() - tpl.cum_len[i];
    return skeleton.point_from_end(remaining);
}

FrameTriad template_frame(const ReferenceTemplate& tpl, std::size_t i) {
    if (i + 1 >= tpl.size()) throw OutOfRange("template_frame index out of range");
    return body_frame_from_tangent(tpl.points[i + 1] - tpl.points[i]);
}

}  // namespace leopack
