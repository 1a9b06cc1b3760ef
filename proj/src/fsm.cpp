#include "leopack/fsm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace leopack {

const char* behavior_name(Behavior b) {
    switch (b) {
        case Behavior::Grasp: return "Grasp";
        case Behavior::Place: return "Place";
        case Behavior::Release: return "Release";
        case Behavior::ChangeActive: return "ChangeActive";
    }
    return "?";
}

const char* status_name(TaskStatus s) {
    switch (s) {
        case TaskStatus::Success: return "Success";
        case TaskStatus::MaxLoopsExceeded: return "MaxLoopsExceeded";
        case TaskStatus::Fault: return "Fault";
    }
    return "?";
}

Pose4 target_pose(ActionPrimitive primitive, const Pose4& x_ref,
                  const Pose4& x_now, double dh, double df, double z0) {
    switch (primitive) {
        case ActionPrimitive::Hover:
            return {x_ref.x, x_ref.y, x_ref.z + dh, x_ref.theta};
        case ActionPrimitive::Approach:
            return {x_now.x, x_now.y, x_ref.z, x_now.theta};
        case ActionPrimitive::Fix:
            return {x_now.x, x_now.y, x_ref.z + df, x_now.theta};
        case ActionPrimitive::Leave:
            return {x_now.x, x_now.y, z0, x_now.theta};
        case ActionPrimitive::Reset:
            return x_ref;
    }
    return x_now;
}

ArmId select_active_role(const OrderedSkeleton& skeleton,
                         const Point3& left_base, const Point3& right_base,
                         ArmId previous) {
    if (skeleton.empty()) return previous;
    Point3 centroid{0, 0, 0};
    for (const Point3& p : skeleton.points) centroid = centroid + p;
    centroid = centroid * (1.0 / double(skeleton.size()));
    const double dl = (centroid - left_base).norm();
    const double dr = (centroid - right_base).norm();
    if (std::abs(dl - dr) <= 1e-9) return previous;
    return dl < dr ? ArmId::Left : ArmId::Right;
}

std::vector<Movement> behavior_sequence(Behavior b, const ReferenceSet& refs,
                                        ArmId active) {
    const ArmId r = active, rb = other_arm(active);
    using A = ActionPrimitive;
    using G = GripperAction;
    switch (b) {
        case Behavior::Grasp:
            return {{r, G::Open, A::Hover},
                    {r, G::Open, A::Approach},
                    {r, G::Close, A::Leave}};
        case Behavior::Place:
            return {{r, G::Close, A::Hover}, {r, G::Close, A::Approach}};
        case Behavior::Release:
            if (refs.fixing)
                return {{rb, G::Close, A::Hover},
                        {rb, G::Close, A::Approach},
                        {r, G::Open, A::Leave}};
            return {{r, G::Open, A::Leave}};
        case Behavior::ChangeActive:
            return {{r, G::Close, A::Fix},
                    {rb, G::Close, A::Leave},
                    {rb, G::Open, A::Reset}};
    }
    return {};
}

int transition(int state_index, bool completion_flag) {
    return completion_flag ? state_index + 1 : state_index;
}

namespace {

struct Runner {
    WorldState& world;
    const RunParams& p;
    const Recorder* rec;
    TaskTrace trace;
    int frame = 0;
    int movement_index = 0;

    Runner(WorldState& w, const RunParams& rp, const Recorder* r)
        : world(w), p(rp), rec(r) {}

    std::uint64_t seed_for(int f) const {
        return p.seed * 0x9e3779b97f4a7c15ULL + std::uint64_t(f) + 1;
    }

    PerceptionResult perceive_world() {
        ++frame;
        PointCloud cloud = render_cloud(world, p.density, p.noise_sigma,
                                        p.r_occ, p.z0, seed_for(frame));
        if (rec && rec->cloud) rec->cloud(frame, cloud);
        return perceive(cloud, world.box, p.perception);
    }

    void log_movement(int loop, Behavior b, const Movement& m, bool flag) {
        trace.movements.push_back({loop, b, m, flag});
        std::ostringstream os;
        os << "loop=" << loop << " behavior=" << behavior_name(b) << " m("
           << arm_name(m.role) << "," << gripper_name(m.gripper) << ","
           << primitive_name(m.primitive) << ") flag=" << (flag ? 1 : 0);
        if (rec && rec->event) rec->event(os.str());
        if (rec && rec->snapshot) rec->snapshot(world, movement_index);
        ++movement_index;
    }

    void log_skip(int loop) {
        if (rec && rec->event) {
            std::ostringstream os;
            os << "loop=" << loop << " behavior=ChangeActive skipped";
            rec->event(os.str());
        }
    }

    // The connected end of the outside skeleton is the one draped over the
    // box wall from the packed part; the free end lies flat on the table.
    // With nothing over the wall yet, the end nearer the packed frontier is
    // the connected one.
    OrderedSkeleton oriented(const OrderedSkeleton& skel,
                             const Point3& frontier) const {
        if (skel.size() < 2) return skel;
        auto over_wall = [&](const Point3& q) {
            return q.z > world.box.height / 2;
        };
        const bool fo = over_wall(skel.points.front());
        const bool bo = over_wall(skel.points.back());
        bool flip;
        if (fo != bo)
            flip = bo;
        else
            flip = (skel.points.front() - frontier).norm() >
                   (skel.points.back() - frontier).norm();
        OrderedSkeleton out = skel;
        if (flip) std::reverse(out.points.begin(), out.points.end());
        return out;
    }

    ReferenceSet build_refs(std::size_t k, const OrderedSkeleton& skel,
                            ArmId active) {
        const ReferenceTemplate& tpl = trace.tpl;
        ReferenceSet refs;
        refs.placing_index = k;
        refs.placing = tpl.points[k];
        refs.placing_pose = reference_pose(
            refs.placing, template_frame(tpl, std::min(k, tpl.size() - 2)));

        try {
            refs.grasping = grasping_point(tpl, k, skel);
        } catch (const SkeletonTooShort&) {
            refs.grasping = skel.points.front();
        }
        std::size_t vi = 0;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < skel.size(); ++i) {
            double d = (skel.points[i] - refs.grasping).norm();
            if (d < best) {
                best = d;
                vi = i;
            }
        }
        Point3 g = refs.grasping;
        g.z = std::max(g.z - tpl.object.diameter / 4, tpl.object.diameter / 4);
        try {
            refs.grasping_pose =
                reference_pose(g, body_frame(skel, std::min(vi, skel.size() - 2)));
        } catch (const DegenerateTangent&) {
            refs.grasping_pose = {g.x, g.y, g.z, 0.0};
        }

        try {
            Point3 f = fixing_point(tpl, k, p.delta_f, other_arm(active));
            std::size_t ti = 0;
            best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < tpl.size(); ++i) {
                double d = (tpl.points[i] - f).norm();
                if (d < best) {
                    best = d;
                    ti = i;
                }
            }
            refs.fixing = f;
            refs.fixing_pose =
                reference_pose(f, template_frame(tpl, std::min(ti, tpl.size() - 2)));
        } catch (const NotEnoughPackedLength&) {
        }
        return refs;
    }

    bool do_grasp(int loop, const ReferenceSet& refs,
                  const OrderedSkeleton& skel, ArmId r) {
        gripper_open(world, r);
        auto path = hover_follow_path(skel, world.arm(r).pose, refs.grasping,
                                      p.dh, world.rod.diameter);
        for (const auto& wp : path) move_arm(world, r, wp);
        log_movement(loop, Behavior::Grasp,
                     {r, GripperAction::Open, ActionPrimitive::Hover}, true);

        Pose4 now = world.arm(r).pose;
        move_arm(world, r,
                 target_pose(ActionPrimitive::Approach, refs.grasping_pose, now,
                             p.dh, p.df, p.z0));
        log_movement(loop, Behavior::Grasp,
                     {r, GripperAction::Open, ActionPrimitive::Approach}, true);

        const bool ok = gripper_close(world, r);
        if (!ok) {
            log_movement(loop, Behavior::Grasp,
                         {r, GripperAction::Close, ActionPrimitive::Leave},
                         false);
            trace.status = TaskStatus::Fault;
            trace.fault_reason = "GraspMiss";
            return false;
        }
        now = world.arm(r).pose;
        move_arm(world, r,
                 target_pose(ActionPrimitive::Leave, now, now, p.dh, p.df, p.z0));
        log_movement(loop, Behavior::Grasp,
                     {r, GripperAction::Close, ActionPrimitive::Leave}, true);
        return true;
    }

    void do_place(int loop, const ReferenceSet& refs, ArmId r,
                  std::size_t from_k) {
        // Enter above the packed frontier and drag the carried section along
        // the reference path; the rod hanging below the gripper then drapes
        // onto its own lane instead of cutting across the box.
        const ReferenceTemplate& tpl = trace.tpl;
        const std::size_t k = refs.placing_index;
        Pose4 now = world.arm(r).pose;
        if (from_k < k) {
            // Start high enough that the carried section hangs clear of the
            // floor, then descend while traversing so the rod pays out onto
            // the lane behind the gripper instead of being dragged sideways.
            const double trail = tpl.cum_len[k] - tpl.cum_len[from_k];
            // High enough that the carried section clears the floor on the
            // way in; touching down happens vertically at the entry.
            const double z_carry = tpl.points[from_k].z + p.dh + trail;
            const double z_hi = tpl.points[from_k].z + trail;
            const FrameTriad ef =
                template_frame(tpl, std::min(from_k, tpl.size() - 2));
            Pose4 entry = reference_pose(tpl.points[from_k], ef);
            entry.z = z_carry;
            // Stage behind the entry along the lane direction so the hanging
            // section lines up with the path before touching down.
            Pose4 staging = entry;
            staging.x -= 2.0 * tpl.object.diameter * ef.i.x;
            staging.y -= 2.0 * tpl.object.diameter * ef.i.y;
            // Carry around the outside of the box rather than straight over
            // it: the part of the object still trailing behind the gripper
            // then drags along its own lane and is never parked over the
            // packing area.
            {
                Pose4 lift = world.arm(r).pose;
                lift.z = z_carry;
                move_arm(world, r, lift);
                const double ring =
                    std::hypot(world.box.length / 2, world.box.width / 2) +
                    2.0 * tpl.object.diameter;
                const double a0 = std::atan2(lift.y, lift.x);
                const double da =
                    normalize_angle(std::atan2(staging.y, staging.x) - a0);
                const int steps =
                    std::max(1, int(std::ceil(std::abs(da) * ring / 40.0)));
                for (int i = 1; i <= steps; ++i) {
                    const double a = a0 + da * double(i) / steps;
                    Pose4 wp = staging;
                    wp.x = ring * std::cos(a);
                    wp.y = ring * std::sin(a);
                    wp.z = z_carry;
                    wp.theta = lift.theta +
                               (staging.theta - lift.theta) * double(i) / steps;
                    move_arm(world, r, wp);
                }
                move_arm(world, r, staging);
            }
            settle(world, 300);  // let the carried section hang straight
            move_arm(world, r, entry);
            entry.z = z_hi;
            move_arm(world, r, entry);  // touch the tip down at the entry
            const std::size_t stride = std::max<std::size_t>(
                1, std::size_t(10.0 / tpl.spacing()));
            for (std::size_t i = from_k; i < k;) {
                i = std::min(i + stride, k);
                const double progress =
                    tpl.cum_len[i] - tpl.cum_len[from_k];
                Pose4 wp = reference_pose(
                    tpl.points[i],
                    template_frame(tpl, std::min(i, tpl.size() - 2)));
                // Pay the rod out one-to-one with the path: keep the hanging
                // length equal to the arc still to be laid.
                wp.z = tpl.points[i].z + (trail - progress);
                move_arm(world, r, wp);
            }
        } else {
            move_arm_two_leg(world, r,
                             target_pose(ActionPrimitive::Hover,
                                         refs.placing_pose, now, p.dh, p.df,
                                         p.z0));
        }
        log_movement(loop, Behavior::Place,
                     {r, GripperAction::Close, ActionPrimitive::Hover}, true);

        now = world.arm(r).pose;
        move_arm(world, r,
                 target_pose(ActionPrimitive::Approach, refs.placing_pose, now,
                             p.dh, p.df, p.z0));
        log_movement(loop, Behavior::Place,
                     {r, GripperAction::Close, ActionPrimitive::Approach}, true);
    }

    std::vector<std::pair<std::size_t, Point3>> inside_nodes() const {
        const double d = world.rod.diameter;
        std::vector<std::pair<std::size_t, Point3>> out;
        for (std::size_t i = 0; i < world.rod.nodes.size(); ++i) {
            const Point3& n = world.rod.nodes[i];
            if (std::abs(n.x) <= world.box.length / 2 - d &&
                std::abs(n.y) <= world.box.width / 2 - d &&
                n.z < world.box.height)
                out.emplace_back(i, n);
        }
        return out;
    }

    void do_release(int loop, const ReferenceSet& refs, ArmId r,
                    LoopRecord& lr) {
        const ArmId rb = other_arm(r);
        if (refs.fixing) {
            // The assistant presses with a closed jaw; it must not pick the
            // rod up, and any press it still holds from the previous loop is
            // abandoned (the floor latch keeps those nodes in place).
            detach_arm_pin(world, rb, PinKind::Grasp);
            detach_arm_pin(world, rb, PinKind::Fix);
            world.arm(rb).gripper = GripperAction::Close;
            Pose4 now = world.arm(rb).pose;
            move_arm_two_leg(world, rb,
                             target_pose(ActionPrimitive::Hover,
                                         *refs.fixing_pose, now, p.dh, p.df,
                                         p.z0));
            log_movement(loop, Behavior::Release,
                         {rb, GripperAction::Close, ActionPrimitive::Hover},
                         true);

            now = world.arm(rb).pose;
            move_arm(world, rb,
                     target_pose(ActionPrimitive::Approach, *refs.fixing_pose,
                                 now, p.dh, p.df, p.z0));
            if (p.fix_enabled) {
                lr.fix_applied = attach_fix(world, rb);
                latch_floor(world);
            }
            log_movement(loop, Behavior::Release,
                         {rb, GripperAction::Close, ActionPrimitive::Approach},
                         true);
        }

        lr.packed_before_release = packed_arc_inside(world);
        const auto snapshot = inside_nodes();
        gripper_open(world, r);
        settle(world, 400);
        double shift = 0.0;
        for (const auto& [i, pos] : snapshot)
            shift = std::max(shift, (world.rod.nodes[i] - pos).norm());
        lr.release_inside_shift = shift;
        lr.packed_after_release = packed_arc_inside(world);

        Pose4 now = world.arm(r).pose;
        move_arm(world, r,
                 target_pose(ActionPrimitive::Leave, now, now, p.dh, p.df, p.z0));
        log_movement(loop, Behavior::Release,
                     {r, GripperAction::Open, ActionPrimitive::Leave}, true);
    }

    void do_change(int loop, const ReferenceSet& refs, ArmId r) {
        const ArmId rb = other_arm(r);
        world.arm(r).gripper = GripperAction::Close;  // press, not a grasp
        Pose4 now = world.arm(r).pose;
        move_arm(world, r,
                 target_pose(ActionPrimitive::Fix, refs.placing_pose, now, p.dh,
                             p.df, p.z0));
        if (p.fix_enabled) {
            attach_fix(world, r);
            latch_floor(world);
        }
        log_movement(loop, Behavior::ChangeActive,
                     {r, GripperAction::Close, ActionPrimitive::Fix}, true);

        detach_arm_pin(world, rb, PinKind::Fix);
        now = world.arm(rb).pose;
        move_arm(world, rb,
                 target_pose(ActionPrimitive::Leave, now, now, p.dh, p.df, p.z0));
        log_movement(loop, Behavior::ChangeActive,
                     {rb, GripperAction::Close, ActionPrimitive::Leave}, true);

        gripper_open(world, rb);
        move_arm(world, rb,
                 target_pose(ActionPrimitive::Reset, world.arm(rb).home,
                             world.arm(rb).pose, p.dh, p.df, p.z0));
        log_movement(loop, Behavior::ChangeActive,
                     {rb, GripperAction::Open, ActionPrimitive::Reset}, true);
    }

    TaskTrace run() {
        const Point3 lb = world.arm(ArmId::Left).base;
        const Point3 rbse = world.arm(ArmId::Right).base;
        ArmId active = ArmId::Left;
        bool have_tpl = false;
        std::size_t frontier_k = 0;  // template index packed so far
        int guard = 3;
        int loop = 1;

        while (true) {
            PerceptionResult perc = perceive_world();
            const bool outside_clear = perc.outside_count < p.stop_threshold;

            if (!have_tpl) {
                ObjectSpec est = world.object;
                if (!outside_clear && perc.est_length > 0) {
                    est.length = perc.est_length;
                    est.diameter =
                        perc.est_width > 0 ? perc.est_width : est.diameter;
                }
                const int m = p.template_samples > 0
                                  ? p.template_samples
                                  : default_sample_count(est.length);
                trace.tpl = generate_template(world.box, est, m);
                trace.placing = placing_indices(trace.tpl, p.delta_l);
                trace.initial_est_length = est.length;
                trace.initial_est_width = est.diameter;
                guard = int(trace.placing.size()) + 2;
                have_tpl = true;
            }

            const double packed = std::clamp(
                trace.initial_est_length -
                    (outside_clear ? 0.0 : perc.est_length),
                0.0, trace.tpl.total_length());
            const int s = set_split(trace.tpl, packed);
            MetricsRow row;
            // Below the stop threshold the leftover outside points are noise,
            // not a rod segment; score the shape as fully inside.
            row.shape = shape_difference(
                perc.inside, outside_clear ? OrderedSkeleton{} : perc.skeleton,
                trace.tpl, s);
            row.shape.loop_index = loop;
            if (!perc.inside.empty()) {
                auto st = similarity_stats(perc.inside, trace.tpl);
                row.mu = st.mean;
                row.sigma2 = st.variance;
            }
            trace.rows.push_back(row);

            if (outside_clear) {
                trace.status = TaskStatus::Success;
                break;
            }
            if (loop > guard) {
                trace.status = TaskStatus::MaxLoopsExceeded;
                break;
            }

            OrderedSkeleton skel =
                oriented(perc.skeleton, trace.tpl.points[std::size_t(s - 1)]);

            std::size_t k;
            LoopRecord lr;
            if (std::size_t(loop - 1) < trace.placing.size()) {
                k = trace.placing[std::size_t(loop - 1)];
            } else {
                k = trace.tpl.size() - 1;
                lr.tail_tuck = true;
            }
            if (loop == 1)
                active = select_active_role(skel, lb, rbse, active);
            lr.index = loop;
            lr.active = active;
            lr.placing_index = k;

            ReferenceSet refs = build_refs(k, skel, active);
            fprintf(stderr, "DBG2 loop=%d k=%zu grasp=(%.1f %.1f %.1f) front=(%.1f %.1f) back=(%.1f %.1f) len=%.1f s=%d\n",
                    loop, k, refs.grasping.x, refs.grasping.y, refs.grasping.z,
                    skel.points.front().x, skel.points.front().y,
                    skel.points.back().x, skel.points.back().y,
                    skel.length(), s);
            if (!do_grasp(loop, refs, skel, active)) {
                trace.loops.push_back(lr);
                break;
            }
            do_place(loop, refs, active, frontier_k);
            do_release(loop, refs, active, lr);
            frontier_k = std::max(frontier_k, k);

            PerceptionResult after = perceive_world();
            if (after.outside_count >= p.stop_threshold &&
                after.skeleton.size() >= 2) {
                ArmId next =
                    select_active_role(after.skeleton, lb, rbse, active);
                if (next != active) {
                    do_change(loop, refs, active);
                    lr.change_active = true;
                    active = next;
                } else {
                    log_skip(loop);
                }
            } else {
                log_skip(loop);
            }
            trace.loops.push_back(lr);
            ++loop;
        }
        return trace;
    }
};

}  // namespace

TaskTrace run_task(WorldState& world, const RunParams& params,
                   const Recorder* rec) {
    Runner runner(world, params, rec);
    return runner.run();
}

}  // namespace leopack
