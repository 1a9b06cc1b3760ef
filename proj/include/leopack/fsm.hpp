#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leopack/actions.hpp"
#include "leopack/metrics.hpp"
#include "leopack/perception.hpp"
#include "leopack/planner.hpp"
#include "leopack/sim.hpp"
#include "leopack/spiral.hpp"

namespace leopack {

enum class Behavior { Grasp, Place, Release, ChangeActive };
const char* behavior_name(Behavior b);

enum class TaskStatus { Success, MaxLoopsExceeded, Fault };
const char* status_name(TaskStatus s);

// a1..a5 target formulas. a2-a4 keep the current x, y, theta; a1 adopts the
// reference; a5 returns the full initial pose (pass it as x_ref).
Pose4 target_pose(ActionPrimitive primitive, const Pose4& x_ref,
                  const Pose4& x_now, double dh, double df, double z0);

// Arm whose base is nearer the centroid of the outside-the-box skeleton;
// ties (and an empty skeleton) keep the previous role.
ArmId select_active_role(const OrderedSkeleton& skeleton,
                         const Point3& left_base, const Point3& right_base,
                         ArmId previous);

// Movement list of one high-level behavior. Release without a fixing
// reference degrades to the active arm's release only.
std::vector<Movement> behavior_sequence(Behavior b, const ReferenceSet& refs,
                                        ArmId active);

// State advance: next movement iff the completion flag is set.
int transition(int state_index, bool completion_flag);

struct MovementRecord {
    int loop = 0;
    Behavior behavior = Behavior::Grasp;
    Movement movement;
    bool flag = true;
};

struct MetricsRow {
    ShapeDifference shape;
    double mu = 0.0;      // similarity mean over the inside cloud
    double sigma2 = 0.0;  // similarity variance
};

struct LoopRecord {
    int index = 1;
    ArmId active = ArmId::Left;
    std::size_t placing_index = 0;
    bool tail_tuck = false;       // placing list exhausted, used template end
    bool fix_applied = false;
    bool change_active = false;
    double packed_before_release = 0.0;  // mm of rod inside before Release
    double packed_after_release = 0.0;
    double release_inside_shift = 0.0;   // max inside-node motion over Release
};

struct TaskTrace {
    std::vector<LoopRecord> loops;
    std::vector<MovementRecord> movements;
    std::vector<MetricsRow> rows;  // one per loop start + final
    TaskStatus status = TaskStatus::Success;
    std::string fault_reason;
    ReferenceTemplate tpl;  // template built from the estimated geometry
    std::vector<std::size_t> placing;
    double initial_est_length = 0.0;
    double initial_est_width = 0.0;
};

struct RunParams {
    double delta_l = 50.0;
    double delta_f = 100.0;
    double dh = 50.0;   // hover offset
    double df = 19.0;   // fixing offset, d_O/2
    double z0 = 180.0;  // initial effector height
    int template_samples = 0;  // 0: default from the estimated length
    double density = 0.15;
    double noise_sigma = 1.0;
    double r_occ = 40.0;
    std::uint64_t seed = 0;
    bool fix_enabled = true;
    std::size_t stop_threshold = 20;  // outside points counted as "empty"
    PerceptionParams perception;
};

struct Recorder {
    std::function<void(const std::string&)> event;            // events.log line
    std::function<void(int frame, const PointCloud&)> cloud;  // per perceive
    std::function<void(const WorldState&, int movement_index)> snapshot;
};

TaskTrace run_task(WorldState& world, const RunParams& params,
                   const Recorder* rec = nullptr);

}  // namespace leopack
