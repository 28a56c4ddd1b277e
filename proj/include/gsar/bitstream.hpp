#pragma once

#include <cstdint>
#include <vector>

namespace gsar {

/// Span of bits belonging to one payload item (a joint or a point).
struct BitSegment {
    std::uint32_t item = 0;
    std::uint32_t offset = 0;
    std::uint32_t length = 0;
};

/// Flat bit sequence plus the segment table mapping payload items to spans.
struct BitStream {
    std::vector<std::uint8_t> bits; // one 0/1 value per entry
    std::vector<BitSegment> segments;

    std::size_t size() const { return bits.size(); }

    /// Appends `nbits` of `value`, most significant bit first.
    void appendBits(std::uint64_t value, int nbits) {
        for (int i = nbits - 1; i >= 0; --i)
            bits.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
    }

    /// Reads `nbits` starting at `offset`, most significant bit first.
    std::uint64_t readBits(std::size_t offset, int nbits) const {
        std::uint64_t v = 0;
        for (int i = 0; i < nbits; ++i) v = (v << 1) | bits[offset + i];
        return v;
    }
};

} // namespace gsar
