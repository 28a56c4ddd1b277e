#pragma once

#include "gsar/pointcloud.hpp"

#include <string>

namespace gsar {

/// Reads an ASCII PLY 1.0 cloud with float x,y,z and uchar red,green,blue.
/// Malformed headers, missing properties and short element lists raise
/// std::runtime_error with the offending line number.
PointCloud plyRead(const std::string& path);

/// Writes the cloud as ASCII PLY 1.0; positions carry 9 significant digits.
void plyWrite(const PointCloud& cloud, const std::string& path);

} // namespace gsar
