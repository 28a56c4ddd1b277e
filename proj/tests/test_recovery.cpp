#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsar/metrics.hpp"
#include "gsar/recovery.hpp"
#include "gsar/rng.hpp"
#include "gsar/rotation.hpp"
#include "gsar/trace_gen.hpp"

using namespace gsar;

namespace {

struct Fixture {
    SkeletonGraph graph = defaultSkeleton25();
    Pose rest;
    SkinBinding binding;
    PointCloud stationary;
    Vec3 la;
    BaseKnowledge bkGsar, bkE;
    QuantizationScheme scheme;

    Fixture() {
        rest = restPose(graph);
        la = graph.nodes[0].restOffset;
        const auto cloud = avatarRestCloud(graph, rest, 600);
        binding = bindToBones(cloud, graph, rest);
        stationary = stationaryModelCloud(400);
        bkGsar = buildBaseKnowledge(Framework::Gsar, graph, binding, rest, la, stationary,
                                    Vec3(0, -0.32, 0));
        bkE = buildBaseKnowledge(Framework::Egsar, graph, binding, rest, la, stationary,
                                 Vec3(0, -0.32, 0));
    }
};

ReceivedFrame roundTrip(const SemanticFrame& frame, const QuantizationScheme& scheme) {
    const auto layout = semanticLayout(frame.kind, frame.joints());
    const auto tx = quantizeSerialize(semanticScalars(frame), layout, scheme);
    const auto rx = deserializeDequantize(tx.stream, layout, scheme);
    ReceivedFrame rf;
    rf.kind = frame.kind;
    rf.scalars = rx.scalars;
    rf.clampCount = tx.clampCount;
    return rf;
}

Pose posedFixture(const SkeletonGraph& graph, std::uint64_t seed) {
    return genTrace(TraceKind::FullBody, 30, seed, graph).frames.back();
}

} // namespace

TEST_CASE("noiseless GSAR round trip stays within half an LSB per axis") {
    Fixture fx;
    const Pose tx = posedFixture(fx.graph, 3);
    const auto rx = roundTrip(extractSemantics(tx, Framework::Gsar), fx.scheme);
    const auto rec = recoverPoseGsar(rx, fx.bkGsar);
    CHECK(rec.zeroNormQuats == 0);
    const double bound = std::sqrt(3.0) * halfStep(fx.scheme, Field::Position);
    for (int i = 0; i < tx.size(); ++i)
        CHECK((tx.positions[i] - rec.pose.positions[i]).norm() <= bound + 1e-12);
}

TEST_CASE("a corrupted position scalar displaces only its own joint") {
    Fixture fx;
    const Pose tx = posedFixture(fx.graph, 4);
    const auto frame = extractSemantics(tx, Framework::Gsar);
    const auto layout = semanticLayout(Framework::Gsar, 25);
    auto ser = quantizeSerialize(semanticScalars(frame), layout, fx.scheme);

    const int joint = 9;
    ser.stream.bits[ser.stream.segments[joint].offset] ^= 1; // x MSB of joint 9

    const auto deq = deserializeDequantize(ser.stream, layout, fx.scheme);
    ReceivedFrame rf;
    rf.kind = Framework::Gsar;
    rf.scalars = deq.scalars;
    const auto rec = recoverPoseGsar(rf, fx.bkGsar);

    const double bound = std::sqrt(3.0) * halfStep(fx.scheme, Field::Position);
    for (int i = 0; i < 25; ++i) {
        const double err = (tx.positions[i] - rec.pose.positions[i]).norm();
        if (i == joint)
            CHECK(err == doctest::Approx(2.0).epsilon(1e-3)); // MSB of [-2,2] range
        else
            CHECK(err <= bound + 1e-12);
    }
}

TEST_CASE("zeroed quaternion becomes the identity rotation and is counted") {
    Fixture fx;
    ReceivedFrame rf;
    rf.kind = Framework::Gsar;
    rf.scalars.assign(175, 0.0);
    for (int i = 1; i < 25; ++i) rf.scalars[i * 7 + 6] = 1.0; // all but joint 0 valid
    const auto rec = recoverPoseGsar(rf, fx.bkGsar);
    CHECK(rec.zeroNormQuats == 1);
    CHECK(rec.pose.rotations[0].isApprox(Quat::Identity(), 1e-12));
}

TEST_CASE("all-zero Euler frame recovers the rest pose at l_a") {
    Fixture fx;
    ReceivedFrame rf;
    rf.kind = Framework::Egsar;
    rf.scalars.assign(75, 0.0);
    const Pose rec = recoverPoseEgsar(rf, fx.bkE);
    CHECK((rec.positions[0] - fx.la).norm() < 1e-12);
    for (int i = 0; i < 25; ++i)
        CHECK((rec.positions[i] - fx.rest.positions[i]).norm() < 1e-12);
}

TEST_CASE("maximally corrupted Euler frames stay inside the reach sphere") {
    Fixture fx;
    const auto pathLen = pathBoneLengths(fx.graph);
    Rng rng(77);
    const auto layout = semanticLayout(Framework::Egsar, 25);
    for (int trial = 0; trial < 25; ++trial) {
        BitStream garbage;
        garbage.bits.reserve(75 * 16);
        for (int b = 0; b < 75 * 16; ++b) garbage.bits.push_back(rng.nextU64() & 1);
        for (int j = 0; j < 25; ++j)
            garbage.segments.push_back({static_cast<std::uint32_t>(j),
                                        static_cast<std::uint32_t>(j * 48), 48});
        const auto deq = deserializeDequantize(garbage, layout, fx.scheme);
        ReceivedFrame rf;
        rf.kind = Framework::Egsar;
        rf.scalars = deq.scalars;
        const Pose rec = recoverPoseEgsar(rf, fx.bkE);
        for (int i = 0; i < 25; ++i)
            CHECK((rec.positions[i] - fx.la).norm() <= pathLen[i] + 1e-9);
    }
}

TEST_CASE("noiseless Euler round trip obeys the FK-propagated bound") {
    Fixture fx;
    // Oracle: worst-case half-LSB on each Euler angle, turned into a rotation
    // perturbation and accumulated over the bone chain.
    const double angErr = 3.0 * deg2rad(halfStep(fx.scheme, Field::EulerDeg));
    std::vector<double> bound(25, 0.0);
    for (int i : topologicalOrder(fx.graph)) {
        const auto& parent = fx.graph.nodes[i].parent;
        if (!parent) continue;
        bound[i] = bound[*parent] + fx.graph.nodes[i].restOffset.norm() * angErr;
    }

    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const Pose tx = posedFixture(fx.graph, seed);
        const auto rx = roundTrip(extractSemantics(tx, Framework::Egsar), fx.scheme);
        const Pose rec = recoverPoseEgsar(rx, fx.bkE);
        double accum = 0.0;
        for (int i = 0; i < 25; ++i) {
            const double err = (tx.positions[i] - rec.positions[i]).norm();
            CHECK(err <= bound[i] + 1e-12);
            accum += err;
        }
        CHECK(mpjpe(tx, rec) == doctest::Approx(accum / 25).epsilon(1e-9));
    }
}

TEST_CASE("GSAR recovery is unconstrained: forced MSB flips leave the reach sphere") {
    Fixture fx;
    const double reach = reachRadius(fx.graph);
    const Pose tx = posedFixture(fx.graph, 8);
    const auto frame = extractSemantics(tx, Framework::Gsar);
    const auto layout = semanticLayout(Framework::Gsar, 25);
    auto ser = quantizeSerialize(semanticScalars(frame), layout, fx.scheme);

    const int joint = 11; // hand tip
    for (int axis = 0; axis < 3; ++axis)
        ser.stream.bits[ser.stream.segments[joint].offset + axis * 16] ^= 1;

    const auto deq = deserializeDequantize(ser.stream, layout, fx.scheme);
    ReceivedFrame rf;
    rf.kind = Framework::Gsar;
    rf.scalars = deq.scalars;
    const auto rec = recoverPoseGsar(rf, fx.bkGsar);
    CHECK((rec.pose.positions[joint] - tx.positions[0]).norm() > reach);
}

TEST_CASE("semantic scenes keep exact colors under any channel corruption") {
    Fixture fx;
    Rng rng(5);
    ReceivedFrame rf;
    rf.kind = Framework::Egsar;
    rf.scalars.resize(75);
    for (auto& s : rf.scalars) s = rng.uniform(-180, 180);
    const Pose rec = recoverPoseEgsar(rf, fx.bkE);
    const PointCloud scene = recoverSceneSemantic(rec, fx.bkE);
    REQUIRE(scene.size() == fx.binding.points.size() + fx.stationary.size());
    for (std::size_t i = 0; i < fx.binding.points.size(); ++i)
        CHECK(scene[i].rgb == fx.binding.points[i].rgb);
    for (std::size_t i = 0; i < fx.stationary.size(); ++i)
        CHECK(scene[fx.binding.points.size() + i].rgb == fx.stationary[i].rgb);
}

TEST_CASE("count mismatches are rejected") {
    Fixture fx;
    ReceivedFrame rf;
    rf.kind = Framework::Gsar;
    rf.scalars.assign(170, 0.0); // not 175
    CHECK_THROWS_AS(recoverPoseGsar(rf, fx.bkGsar), std::invalid_argument);

    ReceivedFrame re;
    re.kind = Framework::Egsar;
    re.scalars.assign(72, 0.0); // not 75
    CHECK_THROWS_AS(recoverPoseEgsar(re, fx.bkE), std::invalid_argument);
}
