#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "stormfield/dynamics/dynamics.hpp"
#include "stormfield/field/presets.hpp"
#include "stormfield/field/sample.hpp"

#include "support/oracles.hpp"

using namespace stormfield;
using namespace stormfield::field;
using namespace stormfield::dyn;

namespace {

splat::CameraFrame make_camera(const Mat3& r, const Vec3& t, int frame = 0, int view = 0) {
    splat::CameraFrame cam;
    cam.rotation = r;
    cam.translation = t;
    cam.fx = cam.fy = 100.0;
    cam.cx = cam.cy = 64.0;
    cam.width = cam.height = 128;
    cam.frame_index = frame;
    cam.view_id = view;
    return cam;
}

ParticleSet single_particle(const Vec3& pos, const Vec3& vel) {
    ParticleSet set;
    set.resize(1);
    set.px[0] = pos.x;
    set.py[0] = pos.y;
    set.pz[0] = pos.z;
    set.qw[0] = 1.0;
    set.sx[0] = set.sy[0] = set.sz[0] = 0.01;
    set.opacity[0] = 0.5;
    set.vx[0] = vel.x;
    set.vy[0] = vel.y;
    set.vz[0] = vel.z;
    return set;
}

}  // namespace

TEST_CASE("step integrates constant velocity") {
    auto set = single_particle({0, 0, 0}, {0, 0, -1});
    set = step(std::move(set), SimStep::of(0.1));
    CHECK(set.px[0] == 0.0);
    CHECK(set.py[0] == 0.0);
    CHECK(set.pz[0] == doctest::Approx(-0.1).epsilon(1e-15));
    CHECK(set.opacity[0] == 0.5);  // attributes untouched
    CHECK(set.size() == 1);
}

TEST_CASE("step with zero velocity is the identity") {
    auto set = single_particle({1.5, -2.0, 4.0}, {0, 0, 0});
    const auto before = set;
    set = step(std::move(set), SimStep::of(3.0));
    CHECK(set.px[0] == before.px[0]);
    CHECK(set.py[0] == before.py[0]);
    CHECK(set.pz[0] == before.pz[0]);
}

TEST_CASE("two half steps equal one full step within 1e-12") {
    std::mt19937_64 eng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Vec3 p{u(eng), u(eng), u(eng)};
        const Vec3 v{u(eng), u(eng), u(eng)};
        auto a = step(step(single_particle(p, v), SimStep::of(0.05)), SimStep::of(0.05));
        auto b = step(single_particle(p, v), SimStep::of(0.1));
        CHECK(std::abs(a.px[0] - b.px[0]) < 1e-12);
        CHECK(std::abs(a.py[0] - b.py[0]) < 1e-12);
        CHECK(std::abs(a.pz[0] - b.pz[0]) < 1e-12);
    }
}

TEST_CASE("step rejects non-positive dt") {
    CHECK_THROWS_AS(SimStep::of(0.0), ValidationError);
    CHECK_THROWS_AS(SimStep::of(-0.1), ValidationError);
    CHECK_THROWS_AS(step(single_particle({0, 0, 0}, {0, 0, 0}), SimStep{0.0}), ValidationError);
}

TEST_CASE("recycle applies the per-axis reset cases") {
    const FieldBounds bounds{{0.0, 0.0, 0.0}, {10.0, 10.0, 10.0}};

    auto below = single_particle({5.0, -0.2, 5.0}, {});
    below = recycle(std::move(below), bounds, 0.5);
    CHECK(below.py[0] == doctest::Approx(9.5).epsilon(1e-15));
    CHECK(below.px[0] == 5.0);  // untouched axes stay

    auto above = single_particle({5.0, 10.4, 5.0}, {});
    above = recycle(std::move(above), bounds, 0.5);
    CHECK(above.py[0] == doctest::Approx(0.5).epsilon(1e-15));

    auto inside = single_particle({5.0, 5.0, 5.0}, {});
    inside = recycle(std::move(inside), bounds, 0.5);
    CHECK(inside.px[0] == 5.0);
    CHECK(inside.py[0] == 5.0);
    CHECK(inside.pz[0] == 5.0);
}

TEST_CASE("recycle rejects offsets as large as the extent") {
    const FieldBounds bounds{{0.0, 0.0, 0.0}, {10.0, 4.0, 10.0}};
    CHECK_THROWS_AS(recycle(single_particle({1, 1, 1}, {}), bounds, 4.0), ValidationError);
    CHECK_THROWS_AS(recycle(single_particle({1, 1, 1}, {}), bounds, -1.0), ValidationError);
}

TEST_CASE("recycle closure over aggressive velocities") {
    auto config = preset(WeatherType::Snow, SeverityLevel::moderate());
    config.quantity = 2000;
    auto set = sample_field(config, 3);
    // velocity large enough to exit the field on every step
    for (std::size_t i = 0; i < set.size(); ++i) {
        set.vx[i] = 80.0;
        set.vy[i] = -90.0;
        set.vz[i] = 120.0;
    }
    for (int frame = 0; frame < 100; ++frame) {
        set = recycle(step(std::move(set), SimStep::of(1.0)), config.bounds,
                      config.recycle_offset);
        REQUIRE(set.size() == 2000);
        for (std::size_t i = 0; i < set.size(); ++i) {
            REQUIRE(set.px[i] >= config.bounds.min.x);
            REQUIRE(set.px[i] <= config.bounds.max.x);
            REQUIRE(set.py[i] >= config.bounds.min.y);
            REQUIRE(set.py[i] <= config.bounds.max.y);
            REQUIRE(set.pz[i] >= config.bounds.min.z);
            REQUIRE(set.pz[i] <= config.bounds.max.z);
        }
    }
}

TEST_CASE("relative_transform of identical poses is the identity") {
    std::mt19937_64 eng(7);
    const auto cam = make_camera(oracles::random_rotation(eng), {1, 2, 3});
    const auto rel = relative_transform(cam, cam);
    CHECK(orthonormality_error(rel.rotation) < 1e-12);
    for (int i = 0; i < 3; ++i)
        CHECK(rel.rotation(i, i) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rel.translation.x) < 1e-12);
    CHECK(std::abs(rel.translation.y) < 1e-12);
    CHECK(std::abs(rel.translation.z) < 1e-12);
}

TEST_CASE("relative_transform of a pure translation") {
    const auto ref = make_camera(Mat3::identity(), {0, 0, 0});
    const auto now = make_camera(Mat3::identity(), {1, 2, 3});
    const auto rel = relative_transform(ref, now);
    CHECK(rel.translation.x == doctest::Approx(1.0));
    CHECK(rel.translation.y == doctest::Approx(2.0));
    CHECK(rel.translation.z == doctest::Approx(3.0));
    CHECK(rel.rotation(0, 0) == 1.0);
}

TEST_CASE("relative_transform multiplies back onto the target pose") {
    std::mt19937_64 eng(13);
    for (int trial = 0; trial < 500; ++trial) {
        const auto a = make_camera(oracles::random_rotation(eng), oracles::random_vec(eng, 50.0));
        const auto b = make_camera(oracles::random_rotation(eng), oracles::random_vec(eng, 50.0));
        const auto rel = relative_transform(a, b);
        const Mat3 r_back = rel.rotation * a.rotation;
        const Vec3 t_back = rel.rotation * a.translation + rel.translation;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                REQUIRE(std::abs(r_back(i, j) - b.rotation(i, j)) < 1e-9);
        REQUIRE(std::abs(t_back.x - b.translation.x) < 1e-9);
        REQUIRE(std::abs(t_back.y - b.translation.y) < 1e-9);
        REQUIRE(std::abs(t_back.z - b.translation.z) < 1e-9);
    }
}

TEST_CASE("relative_transform composes along a pose chain") {
    std::mt19937_64 eng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = make_camera(oracles::random_rotation(eng), oracles::random_vec(eng, 10.0));
        const auto b = make_camera(oracles::random_rotation(eng), oracles::random_vec(eng, 10.0));
        const auto c = make_camera(oracles::random_rotation(eng), oracles::random_vec(eng, 10.0));
        const auto ab_bc = relative_transform(b, c).compose(relative_transform(a, b));
        const auto ac = relative_transform(a, c);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                REQUIRE(std::abs(ab_bc.rotation(i, j) - ac.rotation(i, j)) < 1e-9);
        REQUIRE(std::abs(ab_bc.translation.x - ac.translation.x) < 1e-9);
        REQUIRE(std::abs(ab_bc.translation.y - ac.translation.y) < 1e-9);
        REQUIRE(std::abs(ab_bc.translation.z - ac.translation.z) < 1e-9);
    }
}

TEST_CASE("relative_transform rejects a non-orthonormal pose") {
    auto bad = make_camera(Mat3::identity(), {0, 0, 0});
    bad.rotation(0, 0) = 1.5;
    const auto good = make_camera(Mat3::identity(), {0, 0, 0});
    CHECK_THROWS_AS(relative_transform(bad, good), ValidationError);
}

TEST_CASE("align_field rotates and translates positions (and keeps velocities)") {
    // 90 degrees about z maps (1,0,0) to (0,1,0)
    const RigidTransform rot90{Quat::from_axis_angle({0, 0, 1}, M_PI / 2).to_matrix(), {0, 0, 0}};
    auto set = align_field(single_particle({1, 0, 0}, {3, 4, 5}), rot90);
    CHECK(set.px[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(set.py[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(set.vx[0] == 3.0);  // velocity is an attribute here, not re-posed
    CHECK(set.vy[0] == 4.0);

    const RigidTransform shift{Mat3::identity(), {1, 2, 3}};
    auto moved = align_field(single_particle({5, 5, 5}, {}), shift);
    CHECK(moved.px[0] == 6.0);
    CHECK(moved.py[0] == 7.0);
    CHECK(moved.pz[0] == 8.0);

    auto same = align_field(single_particle({5, 5, 5}, {}), RigidTransform::identity());
    CHECK(same.px[0] == 5.0);
    CHECK(same.qw[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("align_field preserves pairwise distances and composes rotations") {
    std::mt19937_64 eng(23);
    auto config = preset(WeatherType::Snow, SeverityLevel::moderate());
    config.quantity = 300;
    auto set = sample_field(config, 11);
    const auto before = set;

    const RigidTransform x{oracles::random_rotation(eng), oracles::random_vec(eng, 5.0)};
    set = align_field(std::move(set), x);
    set.validate();  // quaternions still unit

    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t i = eng() % set.size(), j = eng() % set.size();
        const double d_before = (before.position(i) - before.position(j)).norm();
        const double d_after = (set.position(i) - set.position(j)).norm();
        REQUIRE(std::abs(d_after - d_before) <= 1e-9 * std::max(1.0, d_before));
    }
}

TEST_CASE("simulate emits one set per frame and conserves particles") {
    auto config = preset(WeatherType::Snow, SeverityLevel::moderate());
    config.quantity = 100;
    std::vector<splat::CameraFrame> traj;
    for (int t = 0; t < 3; ++t) traj.push_back(make_camera(Mat3::identity(), {0, 0, 0.5 * t}, t));
    const auto frames = simulate(config, traj, SimStep::of(0.1), 42);
    REQUIRE(frames.size() == 3);
    for (const auto& f : frames) CHECK(f.size() == 100);
}

TEST_CASE("simulate rejects an empty trajectory") {
    const auto config = preset(WeatherType::Snow, SeverityLevel::moderate());
    CHECK_THROWS_AS(simulate(config, {}, SimStep::of(0.1), 1), ValidationError);
}

TEST_CASE("alignment keeps camera-space positions frame-invariant at zero velocity") {
    auto config = preset(WeatherType::Snow, SeverityLevel::custom(0.05));
    config.velocity = {{0, 0, 0}};
    std::mt19937_64 eng(31);

    // smooth random trajectory: incremental small rotations and translations
    std::vector<splat::CameraFrame> traj;
    Mat3 r = Mat3::identity();
    Vec3 t{0, 0, 0};
    for (int i = 0; i < 40; ++i) {
        traj.push_back(make_camera(r, t, i));
        const Vec3 axis = oracles::random_vec(eng, 1.0);
        const double n = axis.norm();
        r = r * Quat::from_axis_angle(axis * (1.0 / n), 0.02).to_matrix();
        t = t + oracles::random_vec(eng, 0.3);
    }

    const auto frames = simulate(config, traj, SimStep::of(0.1), 9);
    REQUIRE(frames.size() == traj.size());
    const auto& first = frames.front();
    for (std::size_t f = 1; f < frames.size(); ++f) {
        for (std::size_t i = 0; i < first.size(); ++i) {
            const Vec3 cam0 = traj[0].world_to_camera(first.position(i));
            const Vec3 camf = traj[f].world_to_camera(frames[f].position(i));
            REQUIRE((camf - cam0).norm() < 1e-6);
        }
    }
}

TEST_CASE("without alignment a forward camera leaves the field behind") {
    auto config = preset(WeatherType::Snow, SeverityLevel::custom(0.05));
    config.velocity = {{0, 0, 0}};
    std::vector<splat::CameraFrame> traj;
    for (int i = 0; i < 50; ++i) traj.push_back(make_camera(Mat3::identity(), {0, 0, 1.5 * i}, i));

    SimToggles toggles;
    toggles.alignment = false;
    const auto frames = simulate(config, traj, SimStep::of(0.1), 9, toggles);
    const auto& last = frames.back();
    std::size_t behind = 0;
    for (std::size_t i = 0; i < last.size(); ++i) {
        if (traj.back().world_to_camera(last.position(i)).z < 0.0) ++behind;
    }
    CHECK(behind == last.size());
}

TEST_CASE("without dynamics the field is static up to alignment") {
    auto config = preset(WeatherType::Rain, SeverityLevel::custom(0.02));
    std::mt19937_64 eng(37);
    std::vector<splat::CameraFrame> traj;
    Vec3 t{0, 0, 0};
    for (int i = 0; i < 12; ++i) {
        traj.push_back(make_camera(Mat3::identity(), t, i));
        t = t + Vec3{0.1, 0.0, 0.4};
    }
    SimToggles toggles;
    toggles.dynamics = false;
    const auto frames = simulate(config, traj, SimStep::of(0.1), 3, toggles);
    // camera-space positions must match frame 0 exactly up to fp drift
    for (std::size_t f = 1; f < frames.size(); ++f)
        for (std::size_t i = 0; i < frames[f].size(); ++i) {
            const Vec3 a = traj[0].world_to_camera(frames[0].position(i));
            const Vec3 b = traj[f].world_to_camera(frames[f].position(i));
            REQUIRE((a - b).norm() < 1e-9);
        }
}

TEST_CASE("simulate is deterministic") {
    auto config = preset(WeatherType::Snow, SeverityLevel::custom(0.03));
    std::vector<splat::CameraFrame> traj;
    for (int i = 0; i < 6; ++i) traj.push_back(make_camera(Mat3::identity(), {0.2 * i, 0, i}, i));
    const auto a = simulate(config, traj, SimStep::of(0.1), 123);
    const auto b = simulate(config, traj, SimStep::of(0.1), 123);
    REQUIRE(a.size() == b.size());
    for (std::size_t f = 0; f < a.size(); ++f)
        for (std::size_t i = 0; i < a[f].size(); ++i) {
            REQUIRE(a[f].px[i] == b[f].px[i]);
            REQUIRE(a[f].qz[i] == b[f].qz[i]);
            REQUIRE(a[f].vy[i] == b[f].vy[i]);
        }
}
