#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "leopack/spiral.hpp"

using namespace leopack;

namespace {

constexpr double kPi = 3.14159265358979323846;

const BoxSpec kBox{270, 207, 80};

double polyline_length(const std::vector<Point3>& pts) {
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        total += (pts[i] - pts[i - 1]).norm();
    return total;
}

}  // namespace

TEST_CASE("capacity of the 270x207 box with a 38 mm rod") {
    // Hand computation: aperiodic 270 - 103.5 = 166.5; five semicircle terms,
    // each a straight 270 - 207 + 19 = 82 plus an arc pi (207 - 38 j) / 2 for
    // j = 1..5, arcs summing to (169+131+93+55+17) pi / 2.
    const double arcs = (169.0 + 131.0 + 93.0 + 55.0 + 17.0) * kPi / 2;
    const double expected = 166.5 + 5 * 82.0 + arcs;
    CHECK(max_capacity(kBox, 38) == doctest::Approx(expected).epsilon(1e-12));
    CHECK(max_capacity(kBox, 38) == doctest::Approx(1306.92).epsilon(1e-4));
}

TEST_CASE("capacity rejects degenerate geometry") {
    CHECK_THROWS_AS(max_capacity(kBox, 0.0), InvalidDims);
    CHECK_THROWS_AS(max_capacity(BoxSpec{270, 30, 80}, 38), InvalidDims);
    BoxSpec bad{100, 207, 80};  // length < width
    CHECK_THROWS_AS(max_capacity(bad, 38), InvalidDims);
}

TEST_CASE("capacity with d_O = w_B/2 hits a zero-radius innermost arc") {
    // floor(w/d) = 2 and the j = 2 arc has radius zero; the formula still
    // counts its straight run.
    BoxSpec box{300, 200, 80};
    double d = 100;
    double expected = (300 - 100) + 2 * (300 - 200 + 50) + kPi * (100.0) / 2;
    CHECK(max_capacity(box, d) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("default sample count") {
    CHECK(default_sample_count(972) == 194);
    CHECK(default_sample_count(300) == 100);  // floor at 100
    CHECK(default_sample_count(830) == 166);
}

TEST_CASE("template closure, start point, plane, and containment") {
    ObjectSpec obj = make_object(Material::PEF, 972, 38);
    ReferenceTemplate tpl = generate_template(kBox, obj, 195);
    REQUIRE(tpl.size() == 195);

    // Closure: sampled polyline length within 0.1 % of l_O.
    CHECK(std::abs(polyline_length(tpl.points) - 972.0) <= 0.001 * 972.0);
    // Recorded arc positions are exact and uniform.
    CHECK(tpl.cum_len.front() == doctest::Approx(0.0));
    CHECK(tpl.cum_len.back() == doctest::Approx(972.0));
    CHECK(tpl.spacing() == doctest::Approx(972.0 / 194.0));

    // Start at the aperiodic entry, everything in the z = d_O/2 plane.
    CHECK(tpl.points[0].x == doctest::Approx(135.0));
    CHECK(tpl.points[0].y == doctest::Approx((-207.0 + 38.0) / 2));
    for (const auto& p : tpl.points) {
        CHECK(p.z == doctest::Approx(19.0));
        CHECK(std::abs(p.x) <= 135.0 + 1e-6);
        CHECK(std::abs(p.y) <= 103.5 - 19.0 + 1e-6);
    }

    // No jumps: every gap close to the uniform spacing.
    for (std::size_t i = 1; i < tpl.size(); ++i) {
        double gap = (tpl.points[i] - tpl.points[i - 1]).norm();
        CHECK(gap <= tpl.spacing() + 1e-9);
        CHECK(gap >= 0.5 * tpl.spacing());
    }
}

TEST_CASE("template keeps non-adjacent samples a lane apart") {
    ObjectSpec obj = make_object(Material::PEF, 972, 38);
    ReferenceTemplate tpl = generate_template(kBox, obj, 195);
    for (std::size_t i = 0; i < tpl.size(); ++i)
        for (std::size_t j = i + 1; j < tpl.size(); ++j) {
            if (tpl.cum_len[j] - tpl.cum_len[i] < 60.0) continue;
            CHECK((tpl.points[j] - tpl.points[i]).norm() >= 19.0 - 1e-6);
        }
}

TEST_CASE("short object stays on the aperiodic straight") {
    ObjectSpec obj = make_object(Material::PEF, 166.5, 38);
    ReferenceTemplate tpl = generate_template(kBox, obj, 100);
    for (const auto& p : tpl.points) {
        CHECK(p.y == doctest::Approx((-207.0 + 38.0) / 2));
        CHECK(p.z == doctest::Approx(19.0));
    }
    for (std::size_t i = 1; i < tpl.size(); ++i)
        CHECK(tpl.points[i].x < tpl.points[i - 1].x);
    CHECK(tpl.points.back().x == doctest::Approx(135.0 - 166.5));
}

TEST_CASE("capacity is the generation limit") {
    const double cap = max_capacity(kBox, 38);
    ObjectSpec fits = make_object(Material::PEF, cap, 38);
    CHECK_NOTHROW(generate_template(kBox, fits, 300));
    ObjectSpec over = make_object(Material::PEF, cap * 1.01, 38);
    CHECK_THROWS_AS(generate_template(kBox, over, 300), CapacityExceeded);
}

TEST_CASE("sample count floor") {
    ObjectSpec obj = make_object(Material::PEF, 972, 38);
    CHECK_THROWS_AS(generate_template(kBox, obj, 19), BadSampleCount);
    CHECK_NOTHROW(generate_template(kBox, obj, 20));
}

TEST_CASE("point_at endpoints and midpoint") {
    ObjectSpec obj = make_object(Material::PEF, 972, 38);
    ReferenceTemplate tpl = generate_template(kBox, obj, 195);
    Point3 a = point_at(tpl, 0.0);
    CHECK((a - tpl.points.front()).norm() == doctest::Approx(0.0));
    Point3 b = point_at(tpl, 1.0);
    CHECK((b - tpl.points.back()).norm() == doctest::Approx(0.0));
    // Midpoint lands on the polyline half way along the recorded arc.
    Point3 m = point_at(tpl, 0.5);
    int s = set_split(tpl, 486.0);
    Point3 near = tpl.points[std::size_t(s - 1)];
    CHECK((m - near).norm() <= tpl.spacing());
    CHECK_THROWS_AS(point_at(tpl, -0.01), OutOfRange);
    CHECK_THROWS_AS(point_at(tpl, 1.01), OutOfRange);
}

TEST_CASE("set_split boundaries") {
    ObjectSpec obj = make_object(Material::PEF, 972, 38);
    ReferenceTemplate tpl = generate_template(kBox, obj, 101);
    CHECK(set_split(tpl, 0.0) == 1);
    CHECK(set_split(tpl, 972.0) == 101);
    CHECK(set_split(tpl, 486.0) == 51);  // exact half with uniform spacing
    CHECK_THROWS_AS(set_split(tpl, -1.0), OutOfRange);
    CHECK_THROWS_AS(set_split(tpl, 973.0), OutOfRange);
}

TEST_CASE("corresponding point on a straight skeleton") {
    ObjectSpec obj = make_object(Material::PEF, 972, 38);
    ReferenceTemplate tpl = generate_template(kBox, obj, 195);

    OrderedSkeleton skel;
    const int n = 200;
    for (int i = 0; i <= n; ++i)
        skel.points.push_back({i * 972.0 / n, 0, 0});

    // Remaining template arc after index i maps to the same arc measured
    // back from the skeleton end.
    for (std::size_t i : {std::size_t(10), std::size_t(100), std::size_t(194)}) {
        double remaining = 972.0 - tpl.cum_len[i];
        Point3 p = corresponding_point(tpl, i, skel);
        CHECK(p.x == doctest::Approx(972.0 - remaining).epsilon(1e-9));
    }
    CHECK_THROWS_AS(corresponding_point(tpl, 195, skel), OutOfRange);
    OrderedSkeleton empty;
    CHECK_THROWS_AS(corresponding_point(tpl, 10, empty), EmptySkeleton);
}

TEST_CASE("template frames follow the travel direction") {
    ObjectSpec obj = make_object(Material::PEF, 972, 38);
    ReferenceTemplate tpl = generate_template(kBox, obj, 195);

    // The aperiodic lane travels toward -x.
    FrameTriad f0 = template_frame(tpl, 0);
    CHECK(f0.i.x == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(f0.k.z == doctest::Approx(-1.0));
    CHECK(f0.is_orthonormal());

    // Near the apex of the first semicircle the tangent is perpendicular to
    // the long axis. The apex sits half an arc past the end of the aperiodic
    // straight at arc 166.5 + pi * 84.5 / 2.
    double apex = 166.5 + kPi * 84.5 / 2;
    auto it = std::lower_bound(tpl.cum_len.begin(), tpl.cum_len.end(), apex);
    std::size_t ai = std::size_t(it - tpl.cum_len.begin());
    FrameTriad fa = template_frame(tpl, ai);
    CHECK(std::abs(fa.i.x) < 0.1);

    // The frame at the last sample does not exist.
    CHECK_THROWS_AS(template_frame(tpl, 194), OutOfRange);
}
