#pragma once

#include "gsar/bitstream.hpp"
#include "gsar/types.hpp"

#include <complex>
#include <span>
#include <vector>

namespace gsar {

/// Per-frame Rayleigh FDM state: block-constant complex subchannel gains,
/// uniform transmit power and noise power. Immutable after sampling.
struct ChannelRealization {
    Eigen::VectorXcd gains;
    double noisePower = 1.0;  // sigma^2, watts
    double txPower = 1.0;     // P_i, uniform across subchannels

    int n() const { return static_cast<int>(gains.size()); }
    double snrLinear(int i) const { return txPower * std::norm(gains[i]) / noisePower; }
};

/// Draws i.i.d. unit-variance circular-symmetric Gaussian gains and sets the
/// powers so the expected per-subchannel SNR equals snrAvgDb. The same seed
/// reproduces the same gains for any SNR, which keeps sweeps paired.
ChannelRealization sampleChannel(int nSubchannels, double snrAvgDb, std::uint64_t seed);

/// BPSK: bit 1 -> +1, bit 0 -> -1.
std::vector<double> bpskModulate(const BitStream& bits);

/// Coherent decision per symbol: bit 1 iff Re(y * conj(h)) >= 0.
std::vector<std::uint8_t> bpskDemodulate(std::span<const std::complex<double>> received,
                                         std::span<const std::complex<double>> gainPerSymbol);

struct TransmitResult {
    BitStream received;                   // demodulated bits, same segment table
    std::vector<std::int32_t> subchannelOfBit;
};

/// Sends each segment serially over its mapped subchannel as y = h*s + w with
/// w ~ CN(0, sigma^2). An empty mapping assigns segments round-robin;
/// otherwise itemToSubchannel[item] picks the subchannel and out-of-range
/// entries raise an error. Deterministic under noiseSeed.
TransmitResult transmit(const BitStream& bits, const ChannelRealization& channel,
                        std::span<const int> itemToSubchannel, std::uint64_t noiseSeed);

} // namespace gsar
