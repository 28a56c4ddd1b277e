#include "gsar/quantize.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace gsar {

std::pair<double, double> QuantizationScheme::range(Field f) const {
    switch (f) {
        case Field::Position: return {posMin, posMax};
        case Field::QuatComponent: return {quatMin, quatMax};
        case Field::EulerDeg: return {eulerMin, eulerMax};
        case Field::Color8: return {0.0, 255.0};
    }
    throw std::logic_error("unknown field");
}

void QuantizationScheme::validate() const {
    if (bitsPerScalar < 4 || bitsPerScalar > 32)
        throw std::invalid_argument("bits per scalar must lie in [4, 32]");
    if (colorBits < 4 || colorBits > 32)
        throw std::invalid_argument("color bits must lie in [4, 32]");
    if (posMin >= posMax || quatMin >= quatMax || eulerMin >= eulerMax)
        throw std::invalid_argument("quantization range min must be below max");
}

namespace {

std::uint64_t quantizeScalar(double v, double lo, double hi, int bits, int& clamps) {
    const double levels = static_cast<double>((1ull << bits) - 1ull);
    if (v < lo) {
        ++clamps;
        return 0;
    }
    if (v > hi) {
        ++clamps;
        return (1ull << bits) - 1ull;
    }
    return static_cast<std::uint64_t>(std::llround((v - lo) / (hi - lo) * levels));
}

double dequantizeScalar(std::uint64_t idx, double lo, double hi, int bits) {
    const double levels = static_cast<double>((1ull << bits) - 1ull);
    return lo + static_cast<double>(idx) / levels * (hi - lo);
}

} // namespace

SerializedPayload quantizeSerialize(std::span<const double> scalars, const PayloadLayout& layout,
                                    const QuantizationScheme& scheme) {
    scheme.validate();
    if (scalars.size() != layout.scalarCount())
        throw std::invalid_argument("scalar count does not match payload layout");

    SerializedPayload out;
    out.stream.bits.reserve(scalars.size() * scheme.bitsPerScalar);
    std::size_t s = 0;
    for (int item = 0; item < layout.items; ++item) {
        const std::uint32_t start = static_cast<std::uint32_t>(out.stream.size());
        for (Field f : layout.fields) {
            const double v = scalars[s++];
            const int bits = scheme.bitsFor(f);
            if (scheme.floatLayout && f != Field::Color8) {
                out.stream.appendBits(std::bit_cast<std::uint32_t>(static_cast<float>(v)), 32);
            } else {
                const auto [lo, hi] = scheme.range(f);
                out.stream.appendBits(quantizeScalar(v, lo, hi, bits, out.clampCount), bits);
            }
        }
        out.stream.segments.push_back(
            {static_cast<std::uint32_t>(item), start,
             static_cast<std::uint32_t>(out.stream.size()) - start});
    }
    return out;
}

DequantizedPayload deserializeDequantize(const BitStream& stream, const PayloadLayout& layout,
                                         const QuantizationScheme& scheme) {
    scheme.validate();
    DequantizedPayload out;
    out.scalars.reserve(layout.scalarCount());
    std::size_t off = 0;
    for (int item = 0; item < layout.items; ++item) {
        for (Field f : layout.fields) {
            const int bits = scheme.bitsFor(f);
            if (off + bits > stream.size())
                throw std::invalid_argument("bitstream shorter than payload layout");
            const std::uint64_t idx = stream.readBits(off, bits);
            off += bits;
            if (scheme.floatLayout && f != Field::Color8) {
                const float v = std::bit_cast<float>(static_cast<std::uint32_t>(idx));
                if (std::isfinite(v)) {
                    out.scalars.push_back(v);
                } else {
                    out.scalars.push_back(0.0);
                    ++out.sanitizedCount;
                }
            } else {
                const auto [lo, hi] = scheme.range(f);
                out.scalars.push_back(dequantizeScalar(idx, lo, hi, bits));
            }
        }
    }
    if (off != stream.size())
        throw std::invalid_argument("bitstream longer than payload layout");
    return out;
}

double halfStep(const QuantizationScheme& scheme, Field f) {
    const auto [lo, hi] = scheme.range(f);
    const double levels = static_cast<double>((1ull << scheme.bitsFor(f)) - 1ull);
    return (hi - lo) / levels / 2.0;
}

} // namespace gsar
