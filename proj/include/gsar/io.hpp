#pragma once

#include "gsar/skeleton.hpp"

#include <string>

namespace gsar {

/// Skeleton file: JSON {nodes:[{id, parent|null, rest_offset:[x,y,z]}]}.
SkeletonGraph readSkeleton(const std::string& path);
void writeSkeleton(const SkeletonGraph& graph, const std::string& path);

/// Trace file: JSON {fps, joint_count,
///   frames:[{positions:[[x,y,z]...], quaternions:[[x,y,z,w]...]}]}.
AnimationTrace readTrace(const std::string& path);
void writeTrace(const AnimationTrace& trace, const std::string& path);

} // namespace gsar
