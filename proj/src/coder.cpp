#include "gsar/coder.hpp"

#include <stdexcept>

namespace gsar {

ChannelCoder makeCoder(int repetition) {
    if (repetition < 1) throw std::invalid_argument("repetition factor must be positive");
    if (repetition % 2 == 0)
        throw std::invalid_argument("repetition factor must be odd for majority decoding");
    return ChannelCoder{repetition};
}

ChannelCoder parseCoder(const std::string& spec) {
    if (spec == "identity") return ChannelCoder{1};
    const std::string prefix = "repetition:";
    if (spec.rfind(prefix, 0) == 0) {
        const int k = std::stoi(spec.substr(prefix.size()));
        return makeCoder(k);
    }
    throw std::invalid_argument("unknown coder spec '" + spec + "' (identity | repetition:k)");
}

std::string coderName(const ChannelCoder& coder) {
    return coder.repetition == 1 ? "identity" : "repetition:" + std::to_string(coder.repetition);
}

BitStream coderEncode(const BitStream& bits, const ChannelCoder& coder) {
    const int k = coder.repetition;
    if (k == 1) return bits;
    BitStream out;
    out.bits.reserve(bits.size() * k);
    for (std::uint8_t b : bits.bits)
        for (int i = 0; i < k; ++i) out.bits.push_back(b);
    out.segments.reserve(bits.segments.size());
    for (const auto& s : bits.segments)
        out.segments.push_back({s.item, s.offset * k, s.length * k});
    return out;
}

BitStream coderDecode(const BitStream& bits, const ChannelCoder& coder) {
    const int k = coder.repetition;
    if (k == 1) return bits;
    if (bits.size() % k != 0)
        throw std::invalid_argument("coded length not divisible by repetition factor");
    BitStream out;
    out.bits.reserve(bits.size() / k);
    for (std::size_t i = 0; i < bits.size(); i += k) {
        int ones = 0;
        for (int j = 0; j < k; ++j) ones += bits.bits[i + j];
        out.bits.push_back(ones * 2 > k ? 1 : 0);
    }
    out.segments.reserve(bits.segments.size());
    for (const auto& s : bits.segments)
        out.segments.push_back({s.item, s.offset / k, s.length / k});
    return out;
}

} // namespace gsar
