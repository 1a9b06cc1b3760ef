#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leopack/actions.hpp"
#include "leopack/geometry.hpp"

namespace leopack {

enum class PinKind { Grasp, Fix, Floor };

struct Pin {
    std::size_t node = 0;
    Point3 anchor;
    Vec3 offset;   // gripper-tip-to-node offset, Grasp/Fix pins only
    PinKind kind = PinKind::Floor;
    int arm = -1;  // owning ArmId as int, -1 for Floor pins
    // Grasp pins also clamp the rod tangent at the held node: the jaw keeps
    // the local axis it closed on and turns it with the gripper yaw.
    bool has_axis = false;
    Vec3 axis;           // current world-frame tangent at the held node
    Vec3 axis0;          // tangent at the moment the jaw closed
    double theta0 = 0;   // gripper yaw at the moment the jaw closed
};

// Discrete quasi-static elastic rod: Q nodes, uniform rest segments, bending
// stiffness scaled from the Young's modulus.
struct RodState {
    std::vector<Point3> nodes;
    double rest_seg = 0.0;     // mm
    double diameter = 0.0;     // mm
    double bend_weight = 0.5;  // relaxation step toward straightness
    std::vector<Pin> pins;
    bool converged = true;  // outcome of the last relax

    double length() const;
    // Largest |segment - rest| / rest over all segments.
    double max_segment_error() const;
};

struct ArmState {
    ArmId id = ArmId::Left;
    Point3 base;
    Pose4 home;
    Pose4 pose;
    GripperAction gripper = GripperAction::Open;
    std::optional<std::size_t> held_node;
};

struct WorldState {
    RodState rod;
    ArmState arms[2];  // indexed by int(ArmId)
    BoxSpec box;
    ObjectSpec object;
    long time = 0;  // completed motion steps

    ArmState& arm(ArmId id) { return arms[int(id)]; }
    const ArmState& arm(ArmId id) const { return arms[int(id)]; }
};

// Nodes: one per ~10 mm, at least 50.
int default_node_count(double object_length);

RodState make_rod(const ObjectSpec& object, const std::vector<Point3>& centerline);

// Fixed-point relaxation: inextensibility, bending toward neighbor midpoints,
// pseudo-gravity, floor/wall/self-clearance projections, pins re-anchored
// every iteration. Returns true when the max free-node displacement of the
// last iteration fell below tol; also recorded in rod.converged.
bool relax(RodState& rod, const BoxSpec& box, int iters, double tol);

// Discrete bending energy: sum of squared turning angles / rest_seg.
double bending_energy(const RodState& rod);

// Initial scene: rod waiting in a lane that hugs the box walls — head
// (node 0) on the east side near the packing entry, then counterclockwise
// along the north, west, and south sides, continuing on outward laps when
// the object is longer than one circuit. Arms at their homes on +y / -y.
WorldState make_initial_world(const BoxSpec& box, const ObjectSpec& object,
                              double z0);

// Straight-line kinematic motion discretized in 5 mm steps, rod relaxed after
// every step; a held node follows the gripper.
void move_arm(WorldState& world, ArmId arm, const Pose4& target);
// Up, across, down: transit legs stay at the higher of the two endpoint
// heights so the carried rod clears the box walls.
void move_arm_two_leg(WorldState& world, ArmId arm, const Pose4& target);

// Close the gripper; grasp the nearest rod node if within 0.7 * d_O of the
// tip. Returns whether a node was grasped.
bool gripper_close(WorldState& world, ArmId arm);
// Open the gripper and drop this arm's Grasp/Fix pins.
void gripper_open(WorldState& world, ArmId arm);
// Press-in-place: pin the nearest node (within 0.7 * d_O) where it is.
bool attach_fix(WorldState& world, ArmId arm);
// Remove this arm's pin of the given kind, keeping the gripper closed.
void detach_arm_pin(WorldState& world, ArmId arm, PinKind kind);
// Friction latch under a fixing press: pin every settled rod node lying on
// the box floor. Returns how many new pins were added.
std::size_t latch_floor(WorldState& world);

// Let the rod settle with the arms stationary.
void settle(WorldState& world, int iters = 300);

// Arc length of the rod run starting at the head that lies inside the box
// footprint below rim height.
double packed_arc_inside(const WorldState& world);

// Synthetic top-view camera: samples the tube surface around the rod
// polyline, keeps points whose outward normal points up, masks a disc of
// radius r_occ under every arm lowered below z0, then adds isotropic
// Gaussian noise. Deterministic for a given seed.
PointCloud render_cloud(const WorldState& world, double density,
                        double noise_sigma, double r_occ, double z0,
                        std::uint64_t seed);

void write_scene_svg(const WorldState& world, const std::string& path);
void write_scene(const WorldState& world, const std::string& ply_path,
                 const std::string& json_path);

}  // namespace leopack
