#pragma once

#include "gsar/bitstream.hpp"

#include <span>
#include <vector>

namespace gsar {

enum class Field { Position, QuatComponent, EulerDeg, Color8 };

/// Uniform fixed-point layout for payload scalars. Color always travels as
/// 8-bit; the optional float layout sends non-color scalars as IEEE binary32.
struct QuantizationScheme {
    int bitsPerScalar = 16;
    bool floatLayout = false;
    double posMin = -2.0, posMax = 2.0;        // meters per axis
    double quatMin = -1.0, quatMax = 1.0;
    double eulerMin = -180.0, eulerMax = 180.0; // degrees
    int colorBits = 8;

    int bitsFor(Field f) const {
        if (f == Field::Color8) return colorBits;
        return floatLayout ? 32 : bitsPerScalar;
    }
    std::pair<double, double> range(Field f) const;
    void validate() const; // throws on bits outside [4,32] or inverted ranges
};

/// Identical field list for every item; scalars are laid out item-major.
struct PayloadLayout {
    std::vector<Field> fields; // per item
    int items = 0;

    std::size_t scalarCount() const { return fields.size() * static_cast<std::size_t>(items); }
};

struct SerializedPayload {
    BitStream stream;
    int clampCount = 0; // scalars saturated into their declared range
};

/// Fixed-point quantization: index = round((v-min)/(max-min) * (2^b - 1)),
/// saturating, big-endian bit order. One segment per item.
SerializedPayload quantizeSerialize(std::span<const double> scalars, const PayloadLayout& layout,
                                    const QuantizationScheme& scheme);

struct DequantizedPayload {
    std::vector<double> scalars;
    int sanitizedCount = 0; // non-finite float-layout values replaced by 0
};

DequantizedPayload deserializeDequantize(const BitStream& stream, const PayloadLayout& layout,
                                         const QuantizationScheme& scheme);

/// Round-trip error bound for one fixed-point scalar: half a quantizer step.
double halfStep(const QuantizationScheme& scheme, Field f);

} // namespace gsar
