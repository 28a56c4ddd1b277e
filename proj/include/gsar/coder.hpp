#pragma once

#include "gsar/bitstream.hpp"

#include <string>

namespace gsar {

/// Channel coder: repetition factor 1 is the identity coder; factors above 1
/// repeat each bit and decode by majority, so they must be odd.
struct ChannelCoder {
    int repetition = 1;

    double codeRate() const { return 1.0 / repetition; }
};

/// Throws on non-positive or even repetition factors above 1.
ChannelCoder makeCoder(int repetition);

/// Parses "identity" or "repetition:k".
ChannelCoder parseCoder(const std::string& spec);
std::string coderName(const ChannelCoder& coder);

BitStream coderEncode(const BitStream& bits, const ChannelCoder& coder);
BitStream coderDecode(const BitStream& bits, const ChannelCoder& coder);

} // namespace gsar
