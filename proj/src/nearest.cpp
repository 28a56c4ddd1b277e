#include "gsar/nearest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace gsar {

NearestHit bruteNearest(std::span<const Vec3> pts, const Vec3& query, int excludeIndex) {
    NearestHit best{-1, std::numeric_limits<double>::infinity()};
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        if (i == excludeIndex) continue;
        const double d2 = (pts[i] - query).squaredNorm();
        if (d2 < best.dist2) best = {i, d2};
    }
    return best;
}

namespace {
double pickCellSize(std::span<const Vec3> pts) {
    if (pts.empty()) return 1.0;
    Vec3 lo = pts[0], hi = pts[0];
    for (const auto& p : pts) {
        lo = lo.cwiseMin(p);
        hi = hi.cwiseMax(p);
    }
    const double diag = (hi - lo).norm();
    const double cells = std::cbrt(static_cast<double>(pts.size()));
    return std::max(diag / std::max(cells, 1.0), 1e-9);
}
} // namespace

GridIndex::GridIndex(std::span<const Vec3> pts) : GridIndex(pts, pickCellSize(pts)) {}

GridIndex::GridIndex(std::span<const Vec3> pts, double cellSize) : cell_(cellSize) {
    if (cell_ <= 0) throw std::invalid_argument("grid cell size must be positive");
    if (!pts.empty()) origin_ = pts[0];
    pts_.reserve(pts.size() * 2);
    cells_.reserve(pts.size());
    for (const auto& p : pts) insert(p);
}

std::int64_t GridIndex::cellKey(const Vec3& p) const {
    const Vec3 r = p - origin_;
    const std::int64_t x = static_cast<std::int64_t>(std::floor(r.x() / cell_));
    const std::int64_t y = static_cast<std::int64_t>(std::floor(r.y() / cell_));
    const std::int64_t z = static_cast<std::int64_t>(std::floor(r.z() / cell_));
    return ((x & 0x1fffff) << 42) | ((y & 0x1fffff) << 21) | (z & 0x1fffff);
}

void GridIndex::insert(const Vec3& p) {
    pts_.push_back(p);
    insertIndex(static_cast<int>(pts_.size()) - 1);
}

void GridIndex::insertIndex(int idx) {
    const Vec3 r = pts_[idx] - origin_;
    for (int a = 0; a < 3; ++a) {
        const std::int64_t c = static_cast<std::int64_t>(std::floor(r[a] / cell_));
        if (idx == 0) {
            loCell_[a] = hiCell_[a] = c;
        } else {
            loCell_[a] = std::min(loCell_[a], c);
            hiCell_[a] = std::max(hiCell_[a], c);
        }
    }
    cells_[cellKey(pts_[idx])].push_back(idx);
}

NearestHit GridIndex::nearest(const Vec3& query, int excludeIndex) const {
    NearestHit best{-1, std::numeric_limits<double>::infinity()};
    const int candidates =
        static_cast<int>(pts_.size()) -
        ((excludeIndex >= 0 && excludeIndex < static_cast<int>(pts_.size())) ? 1 : 0);
    if (candidates <= 0) return best;

    const Vec3 r = query - origin_;
    const auto cellOf = [&](double v) { return static_cast<std::int64_t>(std::floor(v / cell_)); };
    const std::int64_t cx = cellOf(r.x()), cy = cellOf(r.y()), cz = cellOf(r.z());

    const auto scanCell = [&](std::int64_t x, std::int64_t y, std::int64_t z) {
        const std::int64_t key = ((x & 0x1fffff) << 42) | ((y & 0x1fffff) << 21) | (z & 0x1fffff);
        const auto it = cells_.find(key);
        if (it == cells_.end()) return;
        for (int i : it->second) {
            if (i == excludeIndex) continue;
            const double d2 = (pts_[i] - query).squaredNorm();
            if (d2 < best.dist2 || (d2 == best.dist2 && i < best.index)) best = {i, d2};
        }
    };

    // Expanding Chebyshev shells. Points beyond shell r are at least r*cell
    // away, so the search may stop once that bound exceeds the best hit.
    // maxRing reaches the farthest occupied cell from the query.
    std::int64_t maxRing = 0;
    const std::array<std::int64_t, 3> qc{cx, cy, cz};
    for (int a = 0; a < 3; ++a) {
        maxRing = std::max(maxRing, std::abs(qc[a] - loCell_[a]));
        maxRing = std::max(maxRing, std::abs(hiCell_[a] - qc[a]));
    }
    for (std::int64_t ring = 0; ring <= maxRing; ++ring) {
        if (ring == 0) {
            scanCell(cx, cy, cz);
        } else {
            for (std::int64_t dx = -ring; dx <= ring; ++dx)
                for (std::int64_t dy = -ring; dy <= ring; ++dy) {
                    const std::int64_t m = std::max(std::llabs(dx), std::llabs(dy));
                    if (m == ring) {
                        for (std::int64_t dz = -ring; dz <= ring; ++dz)
                            scanCell(cx + dx, cy + dy, cz + dz);
                    } else {
                        scanCell(cx + dx, cy + dy, cz - ring);
                        scanCell(cx + dx, cy + dy, cz + ring);
                    }
                }
        }
        if (best.index >= 0) {
            const double bound = static_cast<double>(ring) * cell_;
            if (bound * bound >= best.dist2) break;
        }
    }
    return best;
}

} // namespace gsar
