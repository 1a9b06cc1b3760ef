#include "leopack/sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>

#include "json.hpp"
#include "leopack/ply.hpp"

namespace leopack {

namespace {

constexpr double kGravityStep = 1.0;   // mm sink per iteration
constexpr double kStepCap = 5.0;       // mm max free-node move per iteration
constexpr double kMotionStep = 5.0;    // mm arm discretization
constexpr double kGraspTolFactor = 0.7;
constexpr double kFloorContact = 2.0;  // mm above resting height
constexpr double kStickThreshold = 0.25;  // mm/iteration static friction slip

double grasp_tolerance(const RodState& rod) {
    return kGraspTolFactor * rod.diameter;
}

// Minimal-displacement escape from one wall slab (wall plane at `c` along
// one axis, node treated as a sphere of radius r).
void resolve_wall(double& coord, double& z, double c, double other_abs,
                  double half_other, double h, double r) {
    if (std::abs(coord - c) >= r) return;
    if (other_abs >= half_other) return;  // beyond the face span
    if (z >= h + r) return;
    const double d_low = coord - (c - r);
    const double d_high = (c + r) - coord;
    const double d_top = (h + r) - z;
    if (d_top <= d_low && d_top <= d_high)
        z = h + r;
    else if (d_low <= d_high)
        coord = c - r;
    else
        coord = c + r;
}

void resolve_collisions(Point3& p, const BoxSpec& box, double r) {
    if (p.z < r) p.z = r;  // table and box floor share one height
    const double hl = box.length / 2, hw = box.width / 2, h = box.height;
    const double dx = std::abs(p.x) - hl;
    const double dy = std::abs(p.y) - hw;
    if (dx > 0 && dy > 0) {
        // Outside the footprint diagonally: the nearest obstacle is the
        // vertical corner edge, so escape radially from it (or over the rim).
        if (p.z >= h + r) return;
        const double rho = std::hypot(dx, dy);
        if (rho >= r) return;
        if ((h + r) - p.z <= r - rho) {
            p.z = h + r;
            return;
        }
        const double sx = p.x >= 0 ? 1.0 : -1.0;
        const double sy = p.y >= 0 ? 1.0 : -1.0;
        const double scale = rho > 1e-12 ? r / rho : 0.0;
        if (scale > 0) {
            p.x = sx * (hl + dx * scale);
            p.y = sy * (hw + dy * scale);
        } else {
            p.x = sx * (hl + r);
        }
        return;
    }
    resolve_wall(p.x, p.z, +hl, std::abs(p.y), hw, h, r);
    resolve_wall(p.x, p.z, -hl, std::abs(p.y), hw, h, r);
    resolve_wall(p.y, p.z, +hw, std::abs(p.x), hl, h, r);
    resolve_wall(p.y, p.z, -hw, std::abs(p.x), hl, h, r);
}

std::size_t nearest_node(const RodState& rod, const Point3& p) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rod.nodes.size(); ++i) {
        double d = (rod.nodes[i] - p).norm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return best;
}

}  // namespace

double RodState::length() const {
    double acc = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        acc += (nodes[i] - nodes[i - 1]).norm();
    return acc;
}

double RodState::max_segment_error() const {
    double worst = 0.0;
    for (std::size_t i = 1; i < nodes.size(); ++i)
        worst = std::max(
            worst, std::abs((nodes[i] - nodes[i - 1]).norm() - rest_seg));
    return rest_seg > 0 ? worst / rest_seg : 0.0;
}

int default_node_count(double object_length) {
    return std::max(50, int(std::lround(object_length / 10.0)));
}

RodState make_rod(const ObjectSpec& object, const std::vector<Point3>& centerline) {
    if (centerline.size() < 2) throw InvalidDims("rod needs >= 2 nodes");
    RodState rod;
    rod.nodes = centerline;
    rod.diameter = object.diameter;
    rod.rest_seg = object.length / double(centerline.size() - 1);
    rod.bend_weight = std::clamp(object.youngs_modulus / 1.0, 0.05, 0.9);
    return rod;
}

bool relax(RodState& rod, const BoxSpec& box, int iters, double tol) {
    const std::size_t n = rod.nodes.size();
    const double r = rod.diameter / 2;
    const double clearance = rod.diameter / 2;

    std::vector<bool> pinned(n, false);
    for (const auto& pin : rod.pins) pinned[pin.node] = true;
    auto apply_pins = [&] {
        for (const auto& pin : rod.pins) rod.nodes[pin.node] = pin.anchor;
    };

    std::vector<Point3> start;
    std::vector<bool> grounded(n, false);
    bool converged = false;
    for (int it = 0; it < iters; ++it) {
        apply_pins();
        start = rod.nodes;
        for (std::size_t i = 0; i < n; ++i)
            grounded[i] = !pinned[i] && start[i].z <= r + kFloorContact;

        for (std::size_t i = 0; i < n; ++i)
            if (!pinned[i]) rod.nodes[i].z -= kGravityStep;

        // Bending: Gauss-Seidel step toward the neighbor midpoint. Using the
        // already-updated neighbors keeps the step stable at high weights; a
        // Jacobi sweep feeds a growing short-wavelength mode through the
        // length projection below. The sweep direction alternates between
        // iterations, otherwise a pinned chain holding excess length settles
        // into a standing wrinkle that one-directional sweeps cannot drain.
        auto bend_at = [&](std::size_t i) {
            if (pinned[i]) return;
            Point3 mid = (rod.nodes[i - 1] + rod.nodes[i + 1]) * 0.5;
            Vec3 c = (mid - rod.nodes[i]) * rod.bend_weight;
            // Static floor friction against the elastic restoring force: a
            // gently bent section resting on the ground holds its shape
            // instead of creeping straight between manipulations. Tighter
            // bends push harder than friction can hold and keep sliding.
            if (grounded[i] && std::hypot(c.x, c.y) < kStickThreshold) {
                c.x = 0;
                c.y = 0;
            }
            rod.nodes[i] += c;
        };
        if (it % 2 == 0)
            for (std::size_t i = 1; i + 1 < n; ++i) bend_at(i);
        else
            for (std::size_t i = n - 1; i-- > 1;) bend_at(i);

        // A closed jaw also clamps the rod tangent: steer the held node's
        // neighbours onto the jaw axis so the free length extends the way
        // the gripper points instead of pivoting around the pin.
        for (const auto& pin : rod.pins) {
            if (!pin.has_axis) continue;
            const std::size_t h = pin.node;
            for (int s : {-1, +1}) {
                if (s < 0 && h == 0) continue;
                const std::size_t j = s < 0 ? h - 1 : h + 1;
                if (j >= n || pinned[j]) continue;
                const Vec3 off = rod.nodes[j] - pin.anchor;
                const double sign = off.dot(pin.axis) >= 0 ? 1.0 : -1.0;
                const Point3 want = pin.anchor + pin.axis * (sign * rod.rest_seg);
                rod.nodes[j] += (want - rod.nodes[j]) * 0.7;
            }
        }

        // Inextensibility: symmetric forward + backward Gauss-Seidel sweep.
        auto project_segment = [&](std::size_t i) {
            Vec3 d = rod.nodes[i + 1] - rod.nodes[i];
            double len = d.norm();
            if (len < 1e-12) return;
            Vec3 corr = d * ((len - rod.rest_seg) / len);
            const bool p0 = pinned[i], p1 = pinned[i + 1];
            if (p0 && p1) return;
            if (p0)
                rod.nodes[i + 1] -= corr;
            else if (p1)
                rod.nodes[i] += corr;
            else {
                rod.nodes[i] += corr * 0.5;
                rod.nodes[i + 1] -= corr * 0.5;
            }
        };
        // Self-clearance between distant nodes. Pairs closer along the rod
        // than a half turn at the tightest physical bend radius can never
        // touch in a valid shape; including them only braces sub-diameter
        // wrinkles against the smoothing that would iron them out.
        const std::size_t min_sep = std::max<std::size_t>(
            3, std::size_t(std::ceil(M_PI * rod.diameter / 2 / rod.rest_seg)));
        auto resolve_self_clearance = [&] {
            for (std::size_t i = 0; i + min_sep < n; ++i) {
                for (std::size_t j = i + min_sep; j < n; ++j) {
                    if (pinned[i] && pinned[j]) continue;
                    Vec3 d = rod.nodes[j] - rod.nodes[i];
                    double len = d.norm();
                    if (len >= clearance) continue;
                    Vec3 push = len > 1e-9 ? d * ((clearance - len) / len)
                                           : Vec3{clearance, 0, 0};
                    if (pinned[i])
                        rod.nodes[j] += push;
                    else if (pinned[j])
                        rod.nodes[i] -= push;
                    else {
                        rod.nodes[i] -= push * 0.5;
                        rod.nodes[j] += push * 0.5;
                    }
                }
            }
        };

        // Several interleaved sweeps: one pass cannot keep up with the
        // bending step's contraction, and resolving contacts only once after
        // the length projections leaves taut segments stretched over edges.
        // The sweeps settle toward a state satisfying lengths, clearance and
        // collisions together.
        for (int sweep = 0; sweep < 40; ++sweep) {
            for (std::size_t i = 0; i + 1 < n; ++i) project_segment(i);
            for (std::size_t i = n - 1; i-- > 0;) project_segment(i);
            resolve_self_clearance();
            for (std::size_t i = 0; i < n; ++i)
                if (!pinned[i]) resolve_collisions(rod.nodes[i], box, r);
            if (sweep >= 3 && rod.max_segment_error() < 0.02) break;
        }

        apply_pins();

        double residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (pinned[i]) continue;
            Vec3 d = rod.nodes[i] - start[i];
            double len = d.norm();
            if (len > kStepCap) {
                rod.nodes[i] = start[i] + d * (kStepCap / len);
                len = kStepCap;
            }
            residual = std::max(residual, len);
        }
        if (residual <= tol) {
            converged = true;
            break;
        }
    }
    rod.converged = converged;
    return converged;
}

double bending_energy(const RodState& rod) {
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < rod.nodes.size(); ++i) {
        Vec3 a = rod.nodes[i] - rod.nodes[i - 1];
        Vec3 b = rod.nodes[i + 1] - rod.nodes[i];
        double angle = std::atan2(a.cross(b).norm(), a.dot(b));
        acc += angle * angle / rod.rest_seg;
    }
    return acc;
}

WorldState make_initial_world(const BoxSpec& box, const ObjectSpec& object,
                              double z0) {
    box.validate();
    object.validate();
    WorldState world;
    world.box = box;
    world.object = object;

    // The object waits in a lane hugging the box walls: head on the east
    // side near the packing entry, then counterclockwise along the north,
    // west, and south sides (outward laps for longer objects). Placing then
    // pulls the object along its own lane instead of across the box.
    const int q = default_node_count(object.length);
    const double rest = object.length / double(q - 1);
    const double hx = box.length / 2;
    const double hy = box.width / 2;
    const double z = object.diameter / 2;
    const double need = object.length + 2.0 * object.diameter;

    std::vector<Point3> dense;  // ~1 mm walk along the lane
    double walked = 0.0;
    auto emit = [&](const Point3& p) {
        walked += (p - dense.back()).norm();
        dense.push_back(p);
    };
    auto emit_line = [&](const Point3& b) {
        const Point3 a = dense.back();
        const int n = std::max(1, int(std::ceil((b - a).norm())));
        for (int i = 1; i <= n; ++i)
            emit(a + (b - a) * (double(i) / n));
    };
    auto emit_arc = [&](double cx, double cy, double r, double a0, double a1) {
        const int n = std::max(1, int(std::ceil(std::abs(a1 - a0) * r)));
        for (int i = 1; i <= n; ++i) {
            const double a = a0 + (a1 - a0) * double(i) / n;
            emit({cx + r * std::cos(a), cy + r * std::sin(a), z});
        }
    };

    // Placing drags the object along its lane, so roughly the first half of
    // it ends up inside the box after the first placement. Starting the lane
    // well south of the box keeps the not-yet-packed middle on the east and
    // north sides at that point, which is what the role selection sees.
    double m = 40.0;
    dense.push_back({hx + m, -(hy + 0.2 * object.length), z});
    while (walked < need) {
        emit_line({hx + m, hy, z});
        emit_arc(hx, hy, m, 0.0, M_PI / 2);
        emit_line({-hx, hy + m, z});
        emit_arc(-hx, hy, m, M_PI / 2, M_PI);
        emit_line({-hx - m, -hy, z});
        emit_arc(-hx, -hy, m, M_PI, 1.5 * M_PI);
        emit_line({hx, -hy - m, z});
        emit_arc(hx, -hy, m, 1.5 * M_PI, 2.0 * M_PI);
        const double next = m + object.diameter + 20.0;
        emit_line({hx + next, -(hy - 15.0), z});
        m = next;
    }

    std::vector<double> cum(dense.size(), 0.0);
    for (std::size_t i = 1; i < dense.size(); ++i)
        cum[i] = cum[i - 1] + (dense[i] - dense[i - 1]).norm();
    std::vector<Point3> centerline;
    centerline.reserve(std::size_t(q));
    std::size_t j = 0;
    for (int i = 0; i < q; ++i) {
        const double s = double(i) * rest;
        while (j + 2 < dense.size() && cum[j + 1] < s) ++j;
        const double seg = std::max(1e-9, cum[j + 1] - cum[j]);
        const double t = std::clamp((s - cum[j]) / seg, 0.0, 1.0);
        centerline.push_back(dense[j] + (dense[j + 1] - dense[j]) * t);
    }
    world.rod = make_rod(object, centerline);

    for (ArmId id : {ArmId::Left, ArmId::Right}) {
        ArmState& arm = world.arm(id);
        arm.id = id;
        double sy = id == ArmId::Left ? 1.0 : -1.0;
        arm.base = {0.0, sy * 500.0, 0.0};
        arm.home = {0.0, sy * 400.0, z0, 0.0};
        arm.pose = arm.home;
    }
    return world;
}

void move_arm(WorldState& world, ArmId id, const Pose4& target) {
    ArmState& arm = world.arm(id);
    const Vec3 from = arm.pose.position();
    const Vec3 delta = target.position() - from;
    const double dist = delta.norm();
    const double dtheta = normalize_angle(target.theta - arm.pose.theta);
    const double theta0 = arm.pose.theta;
    const int steps = std::max(1, int(std::ceil(dist / kMotionStep)));

    for (int s = 1; s <= steps; ++s) {
        double t = double(s) / steps;
        Vec3 p = from + delta * t;
        arm.pose = {p.x, p.y, p.z, theta0 + dtheta * t};
        if (arm.held_node) {
            for (auto& pin : world.rod.pins)
                if (pin.kind == PinKind::Grasp && pin.arm == int(id)) {
                    pin.anchor = arm.pose.position() + pin.offset;
                    if (pin.has_axis) {
                        const double a =
                            normalize_angle(arm.pose.theta - pin.theta0);
                        const double c = std::cos(a), sn = std::sin(a);
                        pin.axis = {c * pin.axis0.x - sn * pin.axis0.y,
                                    sn * pin.axis0.x + c * pin.axis0.y,
                                    pin.axis0.z};
                    }
                }
        }
        relax(world.rod, world.box, 30, 0.05);
        ++world.time;
    }
    relax(world.rod, world.box, 80, 0.02);
}

void move_arm_two_leg(WorldState& world, ArmId id, const Pose4& target) {
    const Pose4 now = world.arm(id).pose;
    const double transit_z = std::max(now.z, target.z);
    if (transit_z > now.z + 1e-9)
        move_arm(world, id, {now.x, now.y, transit_z, now.theta});
    move_arm(world, id, {target.x, target.y, transit_z, target.theta});
    if (target.z < transit_z - 1e-9) move_arm(world, id, target);
}

bool gripper_close(WorldState& world, ArmId id) {
    ArmState& arm = world.arm(id);
    arm.gripper = GripperAction::Close;
    if (arm.held_node) return true;
    const Point3 tip = arm.pose.position();
    std::size_t node = nearest_node(world.rod, tip);
    if ((world.rod.nodes[node] - tip).norm() > grasp_tolerance(world.rod))
        return false;
    Pin pin;
    pin.node = node;
    pin.offset = world.rod.nodes[node] - tip;
    pin.anchor = world.rod.nodes[node];
    pin.kind = PinKind::Grasp;
    pin.arm = int(id);
    const std::size_t lo = node > 0 ? node - 1 : node;
    const std::size_t hi =
        node + 1 < world.rod.nodes.size() ? node + 1 : node;
    Vec3 t = world.rod.nodes[hi] - world.rod.nodes[lo];
    if (t.norm() > 1e-9) {
        pin.axis0 = t / t.norm();
        pin.axis = pin.axis0;
        pin.theta0 = arm.pose.theta;
        pin.has_axis = true;
    }
    world.rod.pins.push_back(pin);
    arm.held_node = node;
    return true;
}

void gripper_open(WorldState& world, ArmId id) {
    ArmState& arm = world.arm(id);
    arm.gripper = GripperAction::Open;
    arm.held_node.reset();
    auto& pins = world.rod.pins;
    pins.erase(std::remove_if(pins.begin(), pins.end(),
                              [&](const Pin& p) {
                                  return p.arm == int(id) &&
                                         p.kind != PinKind::Floor;
                              }),
               pins.end());
}

bool attach_fix(WorldState& world, ArmId id) {
    ArmState& arm = world.arm(id);
    if (arm.gripper != GripperAction::Close) return false;
    const Point3 tip = arm.pose.position();
    std::size_t node = nearest_node(world.rod, tip);
    if ((world.rod.nodes[node] - tip).norm() > grasp_tolerance(world.rod))
        return false;
    Pin pin;
    pin.node = node;
    pin.offset = world.rod.nodes[node] - tip;
    pin.anchor = world.rod.nodes[node];
    pin.kind = PinKind::Fix;
    pin.arm = int(id);
    world.rod.pins.push_back(pin);
    return true;
}

void detach_arm_pin(WorldState& world, ArmId id, PinKind kind) {
    auto& pins = world.rod.pins;
    pins.erase(std::remove_if(pins.begin(), pins.end(),
                              [&](const Pin& p) {
                                  return p.arm == int(id) && p.kind == kind;
                              }),
               pins.end());
    if (kind == PinKind::Grasp) world.arm(id).held_node.reset();
}

std::size_t latch_floor(WorldState& world) {
    const RodState& rod = world.rod;
    const double r = rod.diameter / 2;
    std::vector<bool> pinned(rod.nodes.size(), false);
    for (const auto& pin : rod.pins) pinned[pin.node] = true;

    std::size_t added = 0;
    for (std::size_t i = 0; i < rod.nodes.size(); ++i) {
        if (pinned[i]) continue;
        const Point3& p = rod.nodes[i];
        if (std::abs(p.x) > world.box.length / 2 - r) continue;
        if (std::abs(p.y) > world.box.width / 2 - r) continue;
        if (p.z > r + kFloorContact) continue;
        Pin pin;
        pin.node = i;
        pin.anchor = p;
        pin.kind = PinKind::Floor;
        world.rod.pins.push_back(pin);
        ++added;
    }
    return added;
}

void settle(WorldState& world, int iters) {
    relax(world.rod, world.box, iters, 0.02);
}

double packed_arc_inside(const WorldState& world) {
    const RodState& rod = world.rod;
    auto inside = [&](const Point3& p) {
        return world.box.inside_footprint(p) && p.z < world.box.height;
    };
    double arc = 0.0;
    for (std::size_t i = 1; i < rod.nodes.size(); ++i) {
        if (!inside(rod.nodes[i - 1]) || !inside(rod.nodes[i])) break;
        arc += rod.rest_seg;
    }
    if (!rod.nodes.empty() && !inside(rod.nodes.front())) return 0.0;
    return arc;
}

PointCloud render_cloud(const WorldState& world, double density,
                        double noise_sigma, double r_occ, double z0,
                        std::uint64_t seed) {
    if (density <= 0) throw OutOfRange("density must be positive");
    const RodState& rod = world.rod;
    const double r = rod.diameter / 2;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<const ArmState*> occluders;
    for (const auto& arm : world.arms)
        if (arm.pose.z < z0 - 1e-6) occluders.push_back(&arm);

    PointCloud cloud;
    for (std::size_t i = 1; i < rod.nodes.size(); ++i) {
        const Point3& a = rod.nodes[i - 1];
        const Point3& b = rod.nodes[i];
        Vec3 axis = b - a;
        const double len = axis.norm();
        if (len < 1e-9) continue;
        axis = axis / len;
        Vec3 n1 = axis.cross({0, 0, 1});
        if (n1.norm() < 1e-9) n1 = axis.cross({1, 0, 0});
        n1 = n1.normalized();
        Vec3 n2 = axis.cross(n1).normalized();

        const long samples = std::lround(density * 2 * M_PI * r * len);
        for (long s = 0; s < samples; ++s) {
            const double t = uni(rng);
            const double phi = 2 * M_PI * uni(rng);
            Vec3 normal = n1 * std::cos(phi) + n2 * std::sin(phi);
            if (normal.z <= 0) continue;  // bottom half is not top-visible
            Point3 p = a + (b - a) * t + normal * r;
            bool masked = false;
            for (const ArmState* arm : occluders)
                if (std::hypot(p.x - arm->pose.x, p.y - arm->pose.y) < r_occ) {
                    masked = true;
                    break;
                }
            if (masked) continue;
            if (noise_sigma > 0)
                p += Vec3{gauss(rng), gauss(rng), gauss(rng)} * noise_sigma;
            cloud.push_back(p);
        }
    }
    return cloud;
}

void write_scene_svg(const WorldState& world, const std::string& path) {
    double min_x = -world.box.length / 2, max_x = world.box.length / 2;
    double min_y = -world.box.width / 2, max_y = world.box.width / 2;
    auto grow = [&](const Point3& p) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    };
    for (const auto& p : world.rod.nodes) grow(p);
    for (const auto& arm : world.arms) grow(arm.pose.position());
    const double pad = 25.0;
    min_x -= pad;
    max_x += pad;
    min_y -= pad;
    max_y += pad;

    auto sx = [&](double x) { return x - min_x; };
    auto sy = [&](double y) { return max_y - y; };  // flip to screen coords

    std::ofstream os(path);
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 "
       << max_x - min_x << " " << max_y - min_y << "\">\n";
    os << "  <rect x=\"" << sx(-world.box.length / 2) << "\" y=\""
       << sy(world.box.width / 2) << "\" width=\"" << world.box.length
       << "\" height=\"" << world.box.width
       << "\" fill=\"none\" stroke=\"#444\" stroke-width=\"2\"/>\n";
    os << "  <polyline fill=\"none\" stroke=\"#c62\" stroke-width=\""
       << world.rod.diameter << "\" stroke-opacity=\"0.6\" points=\"";
    for (const auto& p : world.rod.nodes)
        os << sx(p.x) << "," << sy(p.y) << " ";
    os << "\"/>\n";
    for (const auto& arm : world.arms) {
        const char* color = arm.id == ArmId::Left ? "#26c" : "#2a2";
        os << "  <circle cx=\"" << sx(arm.pose.x) << "\" cy=\""
           << sy(arm.pose.y) << "\" r=\"8\" fill=\"" << color
           << "\" fill-opacity=\""
           << (arm.gripper == GripperAction::Close ? "1.0" : "0.4")
           << "\"/>\n";
    }
    os << "</svg>\n";
}

void write_scene(const WorldState& world, const std::string& ply_path,
                 const std::string& json_path) {
    write_ply_file(ply_path, world.rod.nodes, /*ordered=*/true);
    nlohmann::json j;
    j["time"] = world.time;
    j["box"] = {{"length", world.box.length},
                {"width", world.box.width},
                {"height", world.box.height}};
    j["arms"] = nlohmann::json::array();
    for (const auto& arm : world.arms) {
        nlohmann::json a;
        a["id"] = arm_name(arm.id);
        a["pose"] = {arm.pose.x, arm.pose.y, arm.pose.z, arm.pose.theta};
        a["gripper"] = gripper_name(arm.gripper);
        if (arm.held_node) a["held_node"] = *arm.held_node;
        j["arms"].push_back(a);
    }
    std::ofstream os(json_path);
    os << j.dump(2) << "\n";
}

}  // namespace leopack
