#include "sphericity/rng.hpp"

#include <cmath>

#include "sphericity/normal.hpp"

namespace sphericity {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t(kMul0) * c[0];
    const std::uint64_t p1 = std::uint64_t(kMul1) * c[2];
    const std::uint32_t hi0 = std::uint32_t(p0 >> 32), lo0 = std::uint32_t(p0);
    const std::uint32_t hi1 = std::uint32_t(p1 >> 32), lo1 = std::uint32_t(p1);
    c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(const std::array<std::uint32_t, 4>& counter,
                                               const std::array<std::uint32_t, 2>& key) {
    std::array<std::uint32_t, 4> c = counter;
    std::array<std::uint32_t, 2> k = key;
    for (int r = 0; r < 10; ++r) {
        philox_round(c, k);
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    return c;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t label) {
    return splitmix64(master_seed + 0x9E3779B97F4A7C15ull * (label + 1));
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id)
    : key_{std::uint32_t(seed), std::uint32_t(seed >> 32)},
      counter_{0u, 0u, std::uint32_t(stream_id), std::uint32_t(stream_id >> 32)} {}

void RandomStream::refill() {
    buffer_ = Philox4x32::block(counter_, key_);
    buffered_ = 4;
    if (++counter_[0] == 0) ++counter_[1];  // 64-bit block index
}

std::uint64_t RandomStream::next_u64() {
    if (buffered_ < 2) refill();
    const std::uint32_t lo = buffer_[4 - buffered_];
    const std::uint32_t hi = buffer_[5 - buffered_];
    buffered_ -= 2;
    return (std::uint64_t(hi) << 32) | lo;
}

double RandomStream::next_uniform() {
    return (double(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_gaussian() {
    return normal_quantile(next_uniform());
}

double RandomStream::next_gamma42_centered() {
    // Exponential(rate 2) = -log(u)/2; integer shape keeps the draw
    // count constant, no rejection.
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double u3 = next_uniform();
    const double u4 = next_uniform();
    return -0.5 * std::log(u1 * u2 * u3 * u4) - 2.0;
}

}  // namespace sphericity
