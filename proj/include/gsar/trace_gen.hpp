#pragma once

#include "gsar/pointcloud.hpp"
#include "gsar/skeleton.hpp"

#include <cstdint>
#include <string>

namespace gsar {

enum class TraceKind { UpperBody, SlightShaking, FullBody };

TraceKind parseTraceKind(const std::string& name); // throws on unknown kind
const char* traceKindName(TraceKind kind);

/// Built-in 25-joint humanoid skeleton (hips root, spine chain, arms with
/// hand tips, legs with toes). Offsets are human-scale meters; the root
/// offset anchors the avatar at standing height.
SkeletonGraph defaultSkeleton25();

/// Procedural dance traces: smooth per-joint sinusoidal joint angles with
/// seed-derived amplitudes, frequencies and phases. Upper-body animates only
/// arms/head/upper spine; slight shaking moves every joint a few degrees;
/// full-body sweeps larger angles on all joints. The root stays anchored.
AnimationTrace genTrace(TraceKind kind, int frames, std::uint64_t seed,
                        const SkeletonGraph& graph, double fps = 60.0);
AnimationTrace genTrace(TraceKind kind, int frames, std::uint64_t seed);

/// Rest-pose avatar appearance: points swept around each bone plus one marker
/// point per joint, colored per bone from a near-constant-luminance palette.
PointCloud avatarRestCloud(const SkeletonGraph& graph, const Pose& rest, int count);

/// Stationary background model in local coordinates: stage disc plus a back
/// wall arc, same luminance band as the avatar palette.
PointCloud stationaryModelCloud(int count);

} // namespace gsar
