#pragma once

#include <array>
#include <cstdint>

namespace sphericity {

/// Counter-based generator: Philox4x32 with 10 rounds. A stream is
/// identified by (key = master seed, counter words 2..3 = stream id);
/// counter words 0..1 enumerate blocks within the stream, so distinct
/// (seed, stream) pairs index disjoint blocks of one keyed permutation.
struct Philox4x32 {
    static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 4>& counter,
                                              const std::array<std::uint32_t, 2>& key);
};

/// splitmix64 finalizer, used to derive sub-seeds for independent
/// scenario/cell streams from one master seed.
std::uint64_t splitmix64(std::uint64_t x);

/// Label-keyed sub-seed derivation (deterministic, collision-free for
/// distinct labels under the same master seed).
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t label);

/// One sequential random stream: (master_seed, stream_id) fixes the
/// whole sequence; same pair is bit-identical on every platform/run.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    /// Uniform on the open interval (0,1): ((x >> 11) + 0.5) * 2^-53.
    double next_uniform();

    /// Standard normal via inverse CDF (PPND16); one uniform per draw.
    double next_gaussian();

    /// Gamma(shape 4, rate 2) - 2: sum of four Exponential(2) variates
    /// through the inverse CDF, then centered. Mean 0, variance 1,
    /// fourth moment 4.5. Exactly four uniforms per draw.
    double next_gamma42_centered();

private:
    std::array<std::uint32_t, 2> key_;
    std::array<std::uint32_t, 4> counter_;
    std::array<std::uint32_t, 4> buffer_{};
    int buffered_ = 0;  // unread 32-bit words left in buffer_

    void refill();
};

}  // namespace sphericity
