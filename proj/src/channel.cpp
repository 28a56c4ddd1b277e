#include "gsar/channel.hpp"

#include "gsar/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace gsar {

ChannelRealization sampleChannel(int nSubchannels, double snrAvgDb, std::uint64_t seed) {
    if (nSubchannels < 1) throw std::invalid_argument("need at least one subchannel");
    ChannelRealization ch;
    ch.gains.resize(nSubchannels);
    Rng rng(seed);
    const double s = std::sqrt(0.5);
    for (int i = 0; i < nSubchannels; ++i) {
        const double re = rng.normal() * s;
        const double im = rng.normal() * s;
        ch.gains[i] = {re, im};
    }
    ch.txPower = 1.0;
    ch.noisePower = std::pow(10.0, -snrAvgDb / 10.0);
    return ch;
}

std::vector<double> bpskModulate(const BitStream& bits) {
    std::vector<double> symbols;
    symbols.reserve(bits.size());
    for (std::uint8_t b : bits.bits) symbols.push_back(b ? 1.0 : -1.0);
    return symbols;
}

std::vector<std::uint8_t> bpskDemodulate(std::span<const std::complex<double>> received,
                                         std::span<const std::complex<double>> gainPerSymbol) {
    if (received.size() != gainPerSymbol.size())
        throw std::invalid_argument("received/gain length mismatch");
    std::vector<std::uint8_t> bits;
    bits.reserve(received.size());
    for (std::size_t i = 0; i < received.size(); ++i) {
        const double metric = (received[i] * std::conj(gainPerSymbol[i])).real();
        bits.push_back(metric >= 0.0 ? 1 : 0);
    }
    return bits;
}

TransmitResult transmit(const BitStream& bits, const ChannelRealization& channel,
                        std::span<const int> itemToSubchannel, std::uint64_t noiseSeed) {
    const int nc = channel.n();
    TransmitResult out;
    out.received.bits.resize(bits.size());
    out.received.segments = bits.segments;
    out.subchannelOfBit.assign(bits.size(), -1);

    Rng rng(noiseSeed);
    const double amp = std::sqrt(channel.txPower);
    const double sigma = std::sqrt(channel.noisePower / 2.0);

    for (std::size_t segIdx = 0; segIdx < bits.segments.size(); ++segIdx) {
        const auto& seg = bits.segments[segIdx];
        int sub;
        if (itemToSubchannel.empty()) {
            sub = static_cast<int>(segIdx % nc);
        } else {
            if (seg.item >= itemToSubchannel.size())
                throw std::invalid_argument("mapping misses item " + std::to_string(seg.item));
            sub = itemToSubchannel[seg.item];
            if (sub < 0 || sub >= nc)
                throw std::invalid_argument("mapping references unknown subchannel " +
                                            std::to_string(sub));
        }
        const std::complex<double> h = channel.gains[sub];
        for (std::uint32_t k = 0; k < seg.length; ++k) {
            const std::size_t bitIdx = seg.offset + k;
            const double s = bits.bits[bitIdx] ? amp : -amp;
            const std::complex<double> noise{rng.normal() * sigma, rng.normal() * sigma};
            const std::complex<double> y = h * s + noise;
            out.received.bits[bitIdx] = (y * std::conj(h)).real() >= 0.0 ? 1 : 0;
            out.subchannelOfBit[bitIdx] = sub;
        }
    }
    return out;
}

} // namespace gsar
