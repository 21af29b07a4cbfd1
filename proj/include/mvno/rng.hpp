#pragma once

#include "mvno/common.hpp"

namespace mvno {

// Deterministic ChaCha20-based generator. Every randomized operation in the
// stack draws from one of these, so a scenario seed fixes the whole run.
class Rng {
  public:
    // Derives the stream key from a 64-bit seed.
    explicit Rng(uint64_t seed);
    // Derives the stream key from arbitrary seed material.
    explicit Rng(ByteSpan seed_material);

    // Fresh generator keyed from the OS entropy pool (production mode).
    static Rng system();

    void fill(uint8_t* out, size_t len);
    Bytes bytes(size_t len);
    Bytes32 bytes32();
    uint64_t next_u64();
    // Uniform in [0, bound), bound > 0.
    uint64_t uniform(uint64_t bound);
    bool coin();

    // Independent child stream; forking the parent again with a different
    // label yields an unrelated stream.
    Rng fork(const std::string& label);

  private:
    Rng() = default;
    Bytes32 key_{};
    uint64_t counter_ = 0;
};

}  // namespace mvno
