#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "doctest.h"
#include "leopack/fsm.hpp"

using namespace leopack;

namespace {

const BoxSpec kBox{270, 207, 80};

RunParams quiet_params() {
    RunParams p;
    p.df = 17.0;  // SCF: d_O/2
    p.z0 = 180.0;
    p.seed = 1;
    return p;
}

}  // namespace

TEST_CASE("primitive target formulas") {
    Pose4 ref{100, 50, 19, 0.3};
    Pose4 now{40, -20, 120, 1.0};

    Pose4 hover = target_pose(ActionPrimitive::Hover, ref, now, 50, 19, 180);
    CHECK(hover.x == doctest::Approx(100));
    CHECK(hover.y == doctest::Approx(50));
    CHECK(hover.z == doctest::Approx(69));
    CHECK(hover.theta == doctest::Approx(0.3));

    Pose4 approach =
        target_pose(ActionPrimitive::Approach, ref, now, 50, 19, 180);
    CHECK(approach.x == doctest::Approx(40));
    CHECK(approach.y == doctest::Approx(-20));
    CHECK(approach.z == doctest::Approx(19));
    CHECK(approach.theta == doctest::Approx(1.0));

    Pose4 fix = target_pose(ActionPrimitive::Fix, ref, now, 50, 19, 180);
    CHECK(fix.z == doctest::Approx(38));
    CHECK(fix.x == doctest::Approx(40));

    Pose4 leave = target_pose(ActionPrimitive::Leave, ref, now, 50, 19, 180);
    CHECK(leave.z == doctest::Approx(180));
    CHECK(leave.x == doctest::Approx(40));

    Pose4 reset = target_pose(ActionPrimitive::Reset, ref, now, 50, 19, 180);
    CHECK(reset.x == doctest::Approx(ref.x));
    CHECK(reset.z == doctest::Approx(ref.z));
}

TEST_CASE("active role goes to the arm nearer the skeleton centroid") {
    const Point3 lb{0, 500, 0}, rb{0, -500, 0};
    OrderedSkeleton north;
    north.points = {{-50, 200, 19}, {0, 250, 19}, {50, 300, 19}};
    OrderedSkeleton south;
    south.points = {{-50, -200, 19}, {0, -250, 19}, {50, -300, 19}};
    CHECK(select_active_role(north, lb, rb, ArmId::Right) == ArmId::Left);
    CHECK(select_active_role(south, lb, rb, ArmId::Left) == ArmId::Right);
    // Centroid equidistant from both bases: keep the previous role.
    OrderedSkeleton mid;
    mid.points = {{30, -100, 19}, {30, 100, 19}};
    CHECK(select_active_role(mid, lb, rb, ArmId::Right) == ArmId::Right);
    CHECK(select_active_role(mid, lb, rb, ArmId::Left) == ArmId::Left);
    // No outside points at all: nothing to decide on.
    CHECK(select_active_role(OrderedSkeleton{}, lb, rb, ArmId::Left) ==
          ArmId::Left);
}

TEST_CASE("behavior movement grammars") {
    ReferenceSet refs;
    refs.fixing = Point3{0, 0, 19};
    refs.fixing_pose = Pose4{0, 0, 19, 0};

    auto grasp = behavior_sequence(Behavior::Grasp, refs, ArmId::Left);
    REQUIRE(grasp.size() == 3);
    CHECK(grasp[0].role == ArmId::Left);
    CHECK(grasp[0].gripper == GripperAction::Open);
    CHECK(grasp[0].primitive == ActionPrimitive::Hover);
    CHECK(grasp[1].primitive == ActionPrimitive::Approach);
    CHECK(grasp[2].gripper == GripperAction::Close);
    CHECK(grasp[2].primitive == ActionPrimitive::Leave);

    auto place = behavior_sequence(Behavior::Place, refs, ArmId::Left);
    REQUIRE(place.size() == 2);
    CHECK(place[0].primitive == ActionPrimitive::Hover);
    CHECK(place[1].primitive == ActionPrimitive::Approach);
    for (const auto& m : place) {
        CHECK(m.role == ArmId::Left);
        CHECK(m.gripper == GripperAction::Close);
    }

    auto release = behavior_sequence(Behavior::Release, refs, ArmId::Left);
    REQUIRE(release.size() == 3);
    CHECK(release[0].role == ArmId::Right);  // assistant presses first
    CHECK(release[1].role == ArmId::Right);
    CHECK(release[2].role == ArmId::Left);
    CHECK(release[2].gripper == GripperAction::Open);

    ReferenceSet no_fix;
    auto bare = behavior_sequence(Behavior::Release, no_fix, ArmId::Left);
    REQUIRE(bare.size() == 1);
    CHECK(bare[0].primitive == ActionPrimitive::Leave);

    auto change = behavior_sequence(Behavior::ChangeActive, refs, ArmId::Left);
    REQUIRE(change.size() == 3);
    CHECK(change[0].role == ArmId::Left);
    CHECK(change[0].primitive == ActionPrimitive::Fix);
    CHECK(change[1].role == ArmId::Right);
    CHECK(change[2].primitive == ActionPrimitive::Reset);
}

TEST_CASE("transition advances only on completion") {
    CHECK(transition(0, true) == 1);
    CHECK(transition(4, false) == 4);
}

TEST_CASE("an object already inside ends the task before any loop") {
    ObjectSpec obj = make_object(Material::PEF, 166.5, 38);
    WorldState world = make_initial_world(kBox, obj, 180.0);
    std::vector<Point3> line;
    for (int i = 0; i < 50; ++i)
        line.push_back({80.0 - 160.0 * i / 49.0, 0.0, 19});
    world.rod = make_rod(obj, line);

    RunParams p = quiet_params();
    p.df = 19.0;
    TaskTrace trace = run_task(world, p);
    CHECK(trace.status == TaskStatus::Success);
    CHECK(trace.loops.empty());
    REQUIRE(trace.rows.size() == 1);
    CHECK(trace.rows[0].shape.s == int(trace.tpl.size()));
    CHECK(trace.movements.empty());
}

TEST_CASE("full task on the short stiff object") {
    ObjectSpec obj = make_object(Material::SCF, 558, 34);
    WorldState world = make_initial_world(kBox, obj, 180.0);

    std::vector<std::string> events;
    Recorder rec;
    rec.event = [&](const std::string& line) { events.push_back(line); };

    RunParams p = quiet_params();
    TaskTrace trace = run_task(world, p, &rec);

    REQUIRE(trace.status == TaskStatus::Success);
    CHECK(trace.loops.size() >= 1);
    CHECK(trace.loops.size() <= trace.placing.size() + 1);
    CHECK(trace.rows.size() == trace.loops.size() + 1);

    // Movement grammar: every loop is Grasp x3, Place x2, Release x(1|3),
    // then optionally ChangeActive x3.
    std::map<int, std::vector<Behavior>> per_loop;
    for (const auto& m : trace.movements)
        per_loop[m.loop].push_back(m.behavior);
    for (const auto& [loop, seq] : per_loop) {
        REQUIRE(seq.size() >= 6);
        CHECK(seq[0] == Behavior::Grasp);
        CHECK(seq[1] == Behavior::Grasp);
        CHECK(seq[2] == Behavior::Grasp);
        CHECK(seq[3] == Behavior::Place);
        CHECK(seq[4] == Behavior::Place);
        CHECK(seq[5] == Behavior::Release);
    }

    // Event lines carry the movement tuple format.
    REQUIRE(!events.empty());
    for (const auto& line : events) {
        CHECK(line.rfind("loop=", 0) == 0);
        bool movement = line.find(" m(") != std::string::npos &&
                        line.find("flag=") != std::string::npos;
        bool skip = line.find("skipped") != std::string::npos;
        CHECK((movement || skip));
    }

    // The packed split never shrinks between loop boundaries.
    for (std::size_t i = 1; i < trace.rows.size(); ++i)
        CHECK(trace.rows[i].shape.s >= trace.rows[i - 1].shape.s);

    // Final state: everything inside, shape error in the expected band.
    const auto& last = trace.rows.back();
    CHECK(last.shape.s == int(trace.tpl.size()));
    CHECK(last.shape.e_out <= 2.0);
    CHECK(std::abs(last.shape.e - 17.0) <= 0.25 * 34.0);
}
