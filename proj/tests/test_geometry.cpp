#include <cmath>
#include <random>

#include "doctest.h"
#include "leopack/geometry.hpp"

using namespace leopack;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("normalize_angle maps into (-pi, pi]") {
    CHECK(normalize_angle(0.0) == doctest::Approx(0.0));
    CHECK(normalize_angle(kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(-kPi) == doctest::Approx(kPi));
    CHECK(normalize_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(normalize_angle(0.3 + 4 * kPi) == doctest::Approx(0.3));
    CHECK(normalize_angle(-7.5) == doctest::Approx(-7.5 + 2 * kPi).epsilon(1e-12));
}

TEST_CASE("Pose4 normalizes its yaw on construction") {
    Pose4 p{1.0, 2.0, 3.0, 0.3 + 2 * kPi};
    CHECK(p.theta == doctest::Approx(0.3));
    CHECK(p.position().x == 1.0);
}

TEST_CASE("body frame for a +x tangent is (x, -y, -z)") {
    FrameTriad f = body_frame_from_tangent({1, 0, 0});
    CHECK(f.k.x == doctest::Approx(0.0));
    CHECK(f.k.y == doctest::Approx(0.0));
    CHECK(f.k.z == doctest::Approx(-1.0));
    CHECK(f.j.x == doctest::Approx(0.0));
    CHECK(f.j.y == doctest::Approx(-1.0));
    CHECK(f.j.z == doctest::Approx(0.0));
    CHECK(f.i.x == doctest::Approx(1.0));
    CHECK(f.i.y == doctest::Approx(0.0));
    CHECK(f.i.z == doctest::Approx(0.0));
    CHECK(f.is_orthonormal());
}

TEST_CASE("body frame ignores tangent pitch out of plane") {
    // Tilting the tangent 30 degrees out of the horizontal plane must leave
    // the triad unchanged: j depends only on the horizontal direction.
    FrameTriad flat = body_frame_from_tangent({1, 0, 0});
    FrameTriad tilted =
        body_frame_from_tangent({std::cos(kPi / 6), 0, std::sin(kPi / 6)});
    CHECK((flat.i - tilted.i).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((flat.j - tilted.j).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((flat.k - tilted.k).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("body frame is right-handed and horizontal for random tangents") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n = 0; n < 1000; ++n) {
        Vec3 t{u(rng), u(rng), 0.5 * u(rng)};
        if (t.horizontal_norm() < 1e-3) continue;
        FrameTriad f = body_frame_from_tangent(t);
        CHECK(f.is_orthonormal(1e-9));
        // k straight down, i and j horizontal.
        CHECK(f.k.z == doctest::Approx(-1.0));
        CHECK(std::abs(f.i.z) < 1e-9);
        CHECK(std::abs(f.j.z) < 1e-9);
        // right-handed: i = j x k.
        CHECK((f.i - f.j.cross(f.k)).norm() < 1e-9);
        // j perpendicular to the horizontal tangent.
        CHECK(std::abs(f.j.x * t.x + f.j.y * t.y) < 1e-9);
    }
}

TEST_CASE("vertical tangent has no horizontal heading") {
    CHECK_THROWS_AS(body_frame_from_tangent({0, 0, 1}), DegenerateTangent);
    CHECK_THROWS_AS(body_frame_from_tangent({0, 0, -2}), DegenerateTangent);
}

TEST_CASE("body frame at a skeleton index uses the forward difference") {
    OrderedSkeleton s;
    s.points = {{0, 0, 0}, {10, 0, 0}, {10, 10, 0}};
    FrameTriad f0 = body_frame(s, 0);
    CHECK(f0.i.x == doctest::Approx(1.0));
    FrameTriad f1 = body_frame(s, 1);  // tangent +y
    CHECK(std::abs(f1.j.x * 0 + f1.j.y * 1) < 1e-9);
    CHECK_THROWS_AS(body_frame(s, 2), OutOfRange);
}

TEST_CASE("skeleton length and cumulative arc") {
    OrderedSkeleton s;
    s.points = {{0, 0, 0}, {3, 4, 0}, {3, 4, 12}};
    CHECK(s.length() == doctest::Approx(17.0));
    auto cum = s.cumulative_lengths();
    REQUIRE(cum.size() == 3);
    CHECK(cum[0] == doctest::Approx(0.0));
    CHECK(cum[1] == doctest::Approx(5.0));
    CHECK(cum[2] == doctest::Approx(17.0));
}

TEST_CASE("point_from_end interpolates back from the tail") {
    OrderedSkeleton s;
    s.points = {{0, 0, 0}, {100, 0, 0}};
    Point3 p = s.point_from_end(30.0);
    CHECK(p.x == doctest::Approx(70.0));
    CHECK(p.y == doctest::Approx(0.0));
    // Asking past the head means the observed part is too short.
    CHECK_THROWS_AS(s.point_from_end(1000.0), SkeletonTooShort);
    // Zero distance is the tail itself.
    CHECK(s.point_from_end(0.0).x == doctest::Approx(100.0));
}

TEST_CASE("material catalog") {
    ObjectSpec nl = make_object(Material::NL, 600, 98);
    CHECK(nl.density == doctest::Approx(67.23));
    CHECK(nl.youngs_modulus == doctest::Approx(0.032));
    ObjectSpec puf = make_object(Material::PUF, 830, 30);
    CHECK(puf.density == doctest::Approx(38.76));
    CHECK(puf.youngs_modulus == doctest::Approx(0.185));
    ObjectSpec scf = make_object(Material::SCF, 558, 34);
    CHECK(scf.density == doctest::Approx(62.50));
    CHECK(scf.youngs_modulus == doctest::Approx(0.325));
    ObjectSpec pef = make_object(Material::PEF, 972, 38);
    CHECK(pef.density == doctest::Approx(16.17));
    CHECK(pef.youngs_modulus == doctest::Approx(0.992));
    CHECK(pef.length == 972);
    CHECK(pef.diameter == 38);
}

TEST_CASE("material names round-trip") {
    for (Material m :
         {Material::NL, Material::PUF, Material::SCF, Material::PEF}) {
        CHECK(material_from_name(material_name(m)) == m);
    }
    CHECK_THROWS(material_from_name("granite"));
}

TEST_CASE("object and box validation") {
    ObjectSpec bad = make_object(Material::PEF, 972, 38);
    bad.diameter = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidDims);
    BoxSpec box{270, 207, 80};
    CHECK_NOTHROW(box.validate());
    BoxSpec flat{270, 207, 0};
    CHECK_THROWS_AS(flat.validate(), InvalidDims);
}

TEST_CASE("box footprint and corner radius") {
    BoxSpec box{270, 207, 80};
    CHECK(box.inside_footprint({135, 103.5, 0}));
    CHECK_FALSE(box.inside_footprint({135.1, 0, 0}));
    CHECK(box.corner_radius() == doctest::Approx(std::hypot(135.0, 103.5)));
}
