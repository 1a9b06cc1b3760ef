#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "leopack/planner.hpp"

using namespace leopack;

namespace {

constexpr double kPi = 3.14159265358979323846;

const BoxSpec kBox{270, 207, 80};

ReferenceTemplate pef_template(int samples = 195) {
    return generate_template(kBox, make_object(Material::PEF, 972, 38), samples);
}

// Arc position of a point re-measured on the template polyline.
double template_arc(const ReferenceTemplate& tpl, const Point3& p) {
    std::size_t best = 0;
    double best_d = 1e18;
    for (std::size_t i = 0; i < tpl.size(); ++i) {
        double d = (tpl.points[i] - p).norm();
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return tpl.cum_len[best];
}

}  // namespace

TEST_CASE("workspace halves share a 20 mm overlap band") {
    CHECK(in_workspace_half({0, 0, 0}, ArmId::Left));
    CHECK(in_workspace_half({0, 0, 0}, ArmId::Right));
    CHECK(in_workspace_half({0, 100, 0}, ArmId::Left));
    CHECK_FALSE(in_workspace_half({0, 100, 0}, ArmId::Right));
    CHECK(in_workspace_half({0, -100, 0}, ArmId::Right));
    CHECK_FALSE(in_workspace_half({0, -100, 0}, ArmId::Left));
    CHECK(in_workspace_half({0, -100, 0}, ArmId::Left, 95.0));
}

TEST_CASE("one placing index per lane, re-measured against delta_l") {
    ReferenceTemplate tpl = pef_template();
    auto idx = placing_indices(tpl, 50.0);
    REQUIRE(idx.size() == 3);
    CHECK(std::is_sorted(idx.begin(), idx.end()));
    CHECK(idx[0] < idx[1]);

    // Lanes alternate travel direction, so the crossing side alternates too.
    CHECK(tpl.points[idx[0]].x == doctest::Approx(-50.0).epsilon(0.11));
    CHECK(tpl.points[idx[1]].x == doctest::Approx(50.0).epsilon(0.11));
    CHECK(tpl.points[idx[2]].x == doctest::Approx(-50.0).epsilon(0.11));
    for (std::size_t k : idx) {
        CHECK(std::abs(std::abs(tpl.points[k].x) - 50.0) <= tpl.spacing());
        CHECK(std::abs(tpl.points[k].y) > 40.0);  // on a straight lane
    }
}

TEST_CASE("straight-only template keeps its single nearest sample") {
    ReferenceTemplate tpl =
        generate_template(kBox, make_object(Material::PEF, 166.5, 38), 100);
    auto idx = placing_indices(tpl, 50.0);
    REQUIRE(idx.size() == 1);
    // The 166.5 mm lane ends at x = -31.5 without reaching -50; the nearest
    // sample is its last one.
    CHECK(idx[0] == tpl.size() - 1);
}

TEST_CASE("delta_l must lie strictly inside the half box") {
    ReferenceTemplate tpl = pef_template();
    CHECK_THROWS_AS(placing_indices(tpl, 0.0), OutOfRange);
    CHECK_THROWS_AS(placing_indices(tpl, 135.0), OutOfRange);
}

TEST_CASE("grasping point is the arc-matched skeleton point") {
    ReferenceTemplate tpl = pef_template();
    OrderedSkeleton skel;
    for (int i = 0; i <= 972; i += 4) skel.points.push_back({double(i), 0, 0});
    std::size_t k = placing_indices(tpl, 50.0)[0];
    Point3 g = grasping_point(tpl, k, skel);
    CHECK(g.x == doctest::Approx(tpl.cum_len[k]).epsilon(1e-9));
}

TEST_CASE("fixing point sits delta_f before the placing point") {
    ReferenceTemplate tpl = pef_template();
    std::size_t k = placing_indices(tpl, 50.0)[2];  // third lane, y < 0
    const double arc_k = tpl.cum_len[k];

    // The assistant on the -y side can press the candidate one delta_f back.
    Point3 f_right = fixing_point(tpl, k, 100.0, ArmId::Right);
    CHECK(in_workspace_half(f_right, ArmId::Right));
    CHECK(std::abs(template_arc(tpl, f_right) - (arc_k - 100.0)) <=
          tpl.spacing());

    // For the +y assistant the backward candidate is out of reach and the
    // forward one is used instead.
    Point3 f_left = fixing_point(tpl, k, 100.0, ArmId::Left);
    CHECK(in_workspace_half(f_left, ArmId::Left));
    CHECK(std::abs(template_arc(tpl, f_left) - (arc_k + 100.0)) <=
          tpl.spacing());
}

TEST_CASE("fixing point needs enough packed arc") {
    ReferenceTemplate tpl = pef_template();
    CHECK_THROWS_AS(fixing_point(tpl, 5, 100.0, ArmId::Right),
                    NotEnoughPackedLength);
    CHECK_THROWS_AS(fixing_point(tpl, 400, 100.0, ArmId::Right), OutOfRange);
}

TEST_CASE("reference pose yaw puts the jaw across the tangent") {
    FrameTriad fx = body_frame_from_tangent({1, 0, 0});
    CHECK(reference_pose({10, 20, 30}, fx).theta == doctest::Approx(kPi / 2));
    FrameTriad fy = body_frame_from_tangent({0, 1, 0});
    CHECK(reference_pose({0, 0, 0}, fy).theta == doctest::Approx(kPi));

    // Rotating the tangent rotates the yaw by the same amount.
    for (double phi : {0.3, 1.1, 2.0}) {
        FrameTriad f0 = body_frame_from_tangent({1, 0, 0});
        FrameTriad f1 =
            body_frame_from_tangent({std::cos(phi), std::sin(phi), 0});
        double d = normalize_angle(reference_pose({0, 0, 0}, f1).theta -
                                   reference_pose({0, 0, 0}, f0).theta);
        CHECK(d == doctest::Approx(phi));
    }

    Pose4 p = reference_pose({10, 20, 30}, fx);
    CHECK(p.x == 10);
    CHECK(p.y == 20);
    CHECK(p.z == 30);
}

TEST_CASE("hover path over a level skeleton is flat at dh clearance") {
    OrderedSkeleton skel;
    for (int i = 0; i <= 40; ++i) skel.points.push_back({i * 10.0, 0, 30});
    Pose4 start{-50, 0, 180, 0};
    Point3 target = skel.points[35];
    auto path = hover_follow_path(skel, start, target, 50.0, 38.0);
    REQUIRE(path.size() >= 2);
    for (const auto& w : path) CHECK(w.z == doctest::Approx(80.0));
    CHECK(path.back().x == doctest::Approx(target.x));
    CHECK(path.back().y == doctest::Approx(target.y));
}

TEST_CASE("hover to the nearest skeleton point needs only two waypoints") {
    OrderedSkeleton skel;
    for (int i = 0; i <= 10; ++i) skel.points.push_back({i * 10.0, 0, 30});
    Pose4 start{-40, 5, 180, 0};
    auto path = hover_follow_path(skel, start, skel.points[0], 50.0, 38.0);
    REQUIRE(path.size() == 2);
    CHECK(path[0].x == doctest::Approx(0.0));
    CHECK(path[1].z == doctest::Approx(80.0));
}

TEST_CASE("hover path clears an arched skeleton at every waypoint") {
    OrderedSkeleton skel;
    for (int i = 0; i <= 60; ++i) {
        double x = i * 10.0;
        double bump = 90.0 * std::exp(-(x - 300) * (x - 300) / (2 * 80.0 * 80.0));
        skel.points.push_back({x, 0, 30 + bump});
    }
    Pose4 start{-50, 0, 180, 0};
    auto path = hover_follow_path(skel, start, skel.points[55], 50.0, 38.0);
    for (const auto& w : path) {
        for (const auto& v : skel.points) {
            if (std::hypot(v.x - w.x, v.y - w.y) > 38.0) continue;
            CHECK(w.z >= v.z + 50.0 - 1e-9);
        }
    }
    // A constant-height sweep at the level-section clearance would hit the
    // arch: the apex pokes above 30 + 50.
    double apex = 0.0;
    for (const auto& v : skel.points) apex = std::max(apex, v.z);
    CHECK(apex > 80.0);
}

TEST_CASE("hover path requires a skeleton") {
    OrderedSkeleton empty;
    CHECK_THROWS_AS(hover_follow_path(empty, Pose4{0, 0, 0, 0}, {0, 0, 0},
                                      50.0, 38.0),
                    EmptySkeleton);
}
