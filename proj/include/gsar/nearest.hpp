#pragma once

#include "gsar/types.hpp"

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

namespace gsar {

struct NearestHit {
    int index = -1;
    double dist2 = 0.0;
};

/// Linear-scan nearest neighbour; ties break to the lower index.
NearestHit bruteNearest(std::span<const Vec3> pts, const Vec3& query, int excludeIndex = -1);

/// Uniform-grid nearest neighbour index. Returns results identical to
/// bruteNearest (same distance, same tie-broken index). Supports incremental
/// insertion for growing clouds.
class GridIndex {
  public:
    explicit GridIndex(std::span<const Vec3> pts);
    GridIndex(std::span<const Vec3> pts, double cellSize);

    void insert(const Vec3& p);
    NearestHit nearest(const Vec3& query, int excludeIndex = -1) const;
    int size() const { return static_cast<int>(pts_.size()); }

  private:
    std::int64_t cellKey(const Vec3& p) const;
    void insertIndex(int idx);

    double cell_ = 1.0;
    Vec3 origin_ = Vec3::Zero();
    std::array<std::int64_t, 3> loCell_{0, 0, 0};
    std::array<std::int64_t, 3> hiCell_{0, 0, 0};
    std::vector<Vec3> pts_;
    std::unordered_map<std::int64_t, std::vector<int>> cells_;
};

} // namespace gsar
