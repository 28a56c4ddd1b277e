#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gsar/channel.hpp"
#include "gsar/coder.hpp"
#include "gsar/quantize.hpp"
#include "gsar/rng.hpp"

using namespace gsar;

namespace {

BitStream randomPayload(int nBits, std::uint64_t seed, int segmentLen = 64) {
    Rng rng(seed);
    BitStream bs;
    bs.bits.reserve(nBits);
    for (int i = 0; i < nBits; ++i) bs.bits.push_back(rng.nextU64() & 1);
    for (int off = 0, item = 0; off < nBits; off += segmentLen, ++item) {
        bs.segments.push_back({static_cast<std::uint32_t>(item),
                               static_cast<std::uint32_t>(off),
                               static_cast<std::uint32_t>(std::min(segmentLen, nBits - off))});
    }
    return bs;
}

double rayleighBpskBer(double snrDb) {
    const double g = std::pow(10.0, snrDb / 10.0);
    return 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
}

double empiricalBer(double snrDb, int frames, int bitsPerFrame, std::uint64_t seed) {
    long errors = 0, total = 0;
    for (int f = 0; f < frames; ++f) {
        const auto bits = randomPayload(bitsPerFrame, deriveSeed(seed, 1, f));
        const auto ch = sampleChannel(64, snrDb, deriveSeed(seed, 2, f));
        const auto rx = transmit(bits, ch, {}, deriveSeed(seed, 3, f));
        for (std::size_t i = 0; i < bits.size(); ++i)
            errors += bits.bits[i] != rx.received.bits[i];
        total += bits.size();
    }
    return static_cast<double>(errors) / total;
}

} // namespace

TEST_CASE("channel sampling is seed-deterministic") {
    const auto a = sampleChannel(64, 10.0, 77);
    const auto b = sampleChannel(64, 10.0, 77);
    CHECK(a.gains == b.gains);
    const auto c = sampleChannel(64, 0.0, 77);
    CHECK(a.gains == c.gains); // gains independent of SNR, only noise scales
    CHECK(c.noisePower > a.noisePower);
}

TEST_CASE("gain magnitude and per-subchannel SNR match the Rayleigh moments") {
    double sumMag = 0.0, sumSnr = 0.0;
    long n = 0;
    for (int trial = 0; trial < 1600; ++trial) {
        const auto ch = sampleChannel(64, 10.0, deriveSeed(5, trial));
        for (int i = 0; i < ch.n(); ++i) {
            sumMag += std::norm(ch.gains[i]);
            sumSnr += ch.snrLinear(i);
            ++n;
        }
    }
    CHECK(sumMag / n == doctest::Approx(1.0).epsilon(0.01));
    CHECK(sumSnr / n == doctest::Approx(10.0).epsilon(0.02));
}

TEST_CASE("bpsk mapping and the zero tie rule") {
    BitStream bits;
    bits.bits = {1, 0, 1, 1, 0};
    const auto symbols = bpskModulate(bits);
    CHECK(symbols == std::vector<double>{1, -1, 1, 1, -1});

    // Tie: y = 0 decides bit 1.
    const std::vector<std::complex<double>> y{{0.0, 0.0}};
    const std::vector<std::complex<double>> h{{0.7, -0.2}};
    CHECK(bpskDemodulate(y, h) == std::vector<std::uint8_t>{1});
}

TEST_CASE("noiseless transmission is exact for any gain phase") {
    const auto bits = randomPayload(4096, 9);
    auto ch = sampleChannel(64, 300.0, 123); // sigma^2 ~ 1e-30
    const auto rx = transmit(bits, ch, {}, 55);
    CHECK(rx.received.bits == bits.bits);
}

TEST_CASE("empirical BER at 10 dB matches the closed form within 5%") {
    const double expected = rayleighBpskBer(10.0); // 0.0233
    CHECK(expected == doctest::Approx(0.0233).epsilon(0.01));
    const double measured = empiricalBer(10.0, 600, 4096, 1234); // 2.4e6 bits
    CHECK(measured == doctest::Approx(expected).epsilon(0.05));
}

TEST_CASE("deep fade loses more bits than a strong subchannel") {
    ChannelRealization ch;
    ch.gains.resize(2);
    ch.gains[0] = {0.1, 0.0}; // |h|^2 = 0.01
    ch.gains[1] = {2.0, 0.0}; // |h|^2 = 4
    ch.noisePower = 0.5;
    ch.txPower = 1.0;

    long errWeak = 0, errStrong = 0, n = 0;
    for (int f = 0; f < 100; ++f) {
        auto bits = randomPayload(2048, deriveSeed(6, f), 1024); // 2 segments
        std::vector<int> weakMap{0, 0}, strongMap{1, 1};
        const auto rxWeak = transmit(bits, ch, weakMap, deriveSeed(7, f));
        const auto rxStrong = transmit(bits, ch, strongMap, deriveSeed(7, f));
        for (std::size_t i = 0; i < bits.size(); ++i) {
            errWeak += bits.bits[i] != rxWeak.received.bits[i];
            errStrong += bits.bits[i] != rxStrong.received.bits[i];
            ++n;
        }
    }
    CHECK(errWeak > errStrong);
    CHECK(errStrong < n / 100);
}

TEST_CASE("BER is monotone across the SNR sweep under paired seeds") {
    const std::vector<double> sweep{0.5, 3, 5, 8, 10, 13};
    std::vector<double> ber;
    for (double snr : sweep) ber.push_back(empiricalBer(snr, 40, 4096, 42));
    for (std::size_t i = 1; i < ber.size(); ++i) CHECK(ber[i] <= ber[i - 1]);
}

TEST_CASE("every transmitted bit lands on exactly one subchannel") {
    const auto bits = randomPayload(1000, 3, 40); // 25 segments
    const auto coder = makeCoder(3);
    const auto coded = coderEncode(bits, coder);
    CHECK(coded.size() == bits.size() * 3);
    const auto ch = sampleChannel(64, 10.0, 9);
    const auto rx = transmit(coded, ch, {}, 11);
    CHECK(rx.subchannelOfBit.size() == coded.size());
    for (int sub : rx.subchannelOfBit) {
        CHECK(sub >= 0);
        CHECK(sub < 64);
    }
    // round-robin: segment k entirely on subchannel k % 64
    for (std::size_t s = 0; s < coded.segments.size(); ++s) {
        const auto& seg = coded.segments[s];
        for (std::uint32_t i = 0; i < seg.length; ++i)
            CHECK(rx.subchannelOfBit[seg.offset + i] == static_cast<int>(s % 64));
    }
}

TEST_CASE("mapping to an unknown subchannel is rejected") {
    const auto bits = randomPayload(64, 3, 32);
    const auto ch = sampleChannel(4, 10.0, 9);
    std::vector<int> bad{0, 7}; // only 4 subchannels exist
    CHECK_THROWS_AS(transmit(bits, ch, bad, 1), std::invalid_argument);
}

TEST_CASE("quantizer endpoints, round trip and MSB flips") {
    QuantizationScheme scheme;
    PayloadLayout layout;
    layout.items = 1;
    layout.fields = {Field::Position};

    const auto zero = quantizeSerialize(std::vector<double>{-2.0}, layout, scheme);
    for (auto b : zero.stream.bits) CHECK(b == 0);
    const auto ones = quantizeSerialize(std::vector<double>{2.0}, layout, scheme);
    for (auto b : ones.stream.bits) CHECK(b == 1);

    // round-trip error bounded by half a step (4/65535/2)
    Rng rng(17);
    const double bound = halfStep(scheme, Field::Position);
    CHECK(bound == doctest::Approx(3.0518e-5).epsilon(1e-3));
    for (int i = 0; i < 500; ++i) {
        const double v = rng.uniform(-2, 2);
        const auto s = quantizeSerialize(std::vector<double>{v}, layout, scheme);
        const auto back = deserializeDequantize(s.stream, layout, scheme);
        CHECK(std::abs(back.scalars[0] - v) <= bound + 1e-15);
    }

    // a flipped MSB moves the value by about half the range
    const auto s = quantizeSerialize(std::vector<double>{0.31}, layout, scheme);
    BitStream flipped = s.stream;
    flipped.bits[0] ^= 1;
    const auto a = deserializeDequantize(s.stream, layout, scheme);
    const auto b = deserializeDequantize(flipped, layout, scheme);
    CHECK(std::abs(a.scalars[0] - b.scalars[0]) == doctest::Approx(2.0).epsilon(1e-4));

    // saturation counts clamps
    const auto clamped = quantizeSerialize(std::vector<double>{4.5}, layout, scheme);
    CHECK(clamped.clampCount == 1);
    const auto back = deserializeDequantize(clamped.stream, layout, scheme);
    CHECK(back.scalars[0] == doctest::Approx(2.0));

    // scheme invariants: bits within [4, 32], ranges ordered
    QuantizationScheme narrow;
    narrow.bitsPerScalar = 3;
    CHECK_THROWS_AS(narrow.validate(), std::invalid_argument);
    QuantizationScheme wide;
    wide.bitsPerScalar = 33;
    CHECK_THROWS_AS(wide.validate(), std::invalid_argument);
    QuantizationScheme inverted;
    inverted.posMin = 2.0;
    inverted.posMax = -2.0;
    CHECK_THROWS_AS(inverted.validate(), std::invalid_argument);
}

TEST_CASE("float layout round-trips exactly and sanitizes non-finite values") {
    QuantizationScheme scheme;
    scheme.floatLayout = true;
    PayloadLayout layout;
    layout.items = 1;
    layout.fields = {Field::Position, Field::Color8};

    const auto s = quantizeSerialize(std::vector<double>{0.123456, 200.0}, layout, scheme);
    CHECK(s.stream.size() == 40); // 32-bit float + 8-bit color
    const auto back = deserializeDequantize(s.stream, layout, scheme);
    CHECK(back.scalars[0] == doctest::Approx(0.123456).epsilon(1e-7));
    CHECK(back.scalars[1] == 200.0);

    // force an all-ones exponent (NaN) and expect sanitation
    BitStream evil = s.stream;
    for (int i = 1; i <= 8; ++i) evil.bits[i] = 1;
    evil.bits[9] = 1;
    const auto rx = deserializeDequantize(evil, layout, scheme);
    CHECK(rx.sanitizedCount == 1);
    CHECK(rx.scalars[0] == 0.0);
}

TEST_CASE("coder: identity, single-flip correction, majority BER") {
    const auto bits = randomPayload(999, 5, 333);
    CHECK(coderEncode(bits, ChannelCoder{1}).bits == bits.bits);
    CHECK_THROWS_AS(makeCoder(2), std::invalid_argument);
    CHECK_THROWS_AS(makeCoder(0), std::invalid_argument);

    const auto coder = makeCoder(3);
    auto coded = coderEncode(bits, coder);
    Rng rng(8);
    for (std::size_t t = 0; t < coded.size(); t += 3)
        coded.bits[t + rng.nextU64() % 3] ^= 1; // one flip per triple
    CHECK(coderDecode(coded, coder).bits == bits.bits);

    // independent flips at p = 0.1 decode to about 3p^2 - 2p^3
    const double p = 0.1;
    long errors = 0, total = 0;
    Rng noise(19);
    for (int f = 0; f < 350; ++f) {
        const auto payload = randomPayload(3000, deriveSeed(20, f));
        auto enc = coderEncode(payload, coder);
        for (auto& b : enc.bits)
            if (noise.uniform() < p) b ^= 1;
        const auto dec = coderDecode(enc, coder);
        for (std::size_t i = 0; i < payload.size(); ++i)
            errors += payload.bits[i] != dec.bits[i];
        total += payload.size();
    }
    const double expected = 3 * p * p - 2 * p * p * p;
    CHECK(static_cast<double>(errors) / total == doctest::Approx(expected).epsilon(0.05));
}
