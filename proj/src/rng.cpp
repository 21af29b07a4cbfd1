#include "mvno/rng.hpp"

#include <sodium.h>

#include "mvno/hash.hpp"

namespace mvno {

Rng::Rng(uint64_t seed) {
    uint8_t b[8];
    for (int i = 0; i < 8; i++) b[i] = uint8_t(seed >> (8 * i));
    key_ = hash32("mvno/rng-seed", ByteSpan(b, 8));
}

Rng::Rng(ByteSpan seed_material) { key_ = hash32("mvno/rng-seed", seed_material); }

Rng Rng::system() {
    ensure_sodium_init();
    Rng r(uint64_t(0));
    randombytes_buf(r.key_.data(), r.key_.size());
    r.counter_ = 0;
    return r;
}

void Rng::fill(uint8_t* out, size_t len) {
    ensure_sodium_init();
    uint8_t nonce[crypto_stream_chacha20_NONCEBYTES] = {0};
    for (int i = 0; i < 8; i++) nonce[i] = uint8_t(counter_ >> (8 * i));
    counter_++;
    std::memset(out, 0, len);
    crypto_stream_chacha20_xor(out, out, len, nonce, key_.data());
}

Bytes Rng::bytes(size_t len) {
    Bytes out(len);
    fill(out.data(), len);
    return out;
}

Bytes32 Rng::bytes32() {
    Bytes32 out;
    fill(out.data(), out.size());
    return out;
}

uint64_t Rng::next_u64() {
    uint8_t b[8];
    fill(b, 8);
    uint64_t v = 0;
    for (int i = 0; i < 8; i++) v |= uint64_t(b[i]) << (8 * i);
    return v;
}

uint64_t Rng::uniform(uint64_t bound) {
    // rejection sampling over the top multiple of bound
    uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
    for (;;) {
        uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

bool Rng::coin() { return (next_u64() & 1) != 0; }

Rng Rng::fork(const std::string& label) {
    Bytes material;
    append(material, ByteSpan(key_.data(), key_.size()));
    append(material, label);
    Rng child(ByteSpan(material.data(), material.size()));
    // advance the parent so repeated forks with the same label differ
    counter_++;
    Bytes ctr(8);
    for (int i = 0; i < 8; i++) ctr[i] = uint8_t(counter_ >> (8 * i));
    Bytes m2;
    append(m2, ByteSpan(child.key_.data(), 32));
    append(m2, ByteSpan(ctr.data(), 8));
    child.key_ = hash32("mvno/rng-fork", ByteSpan(m2.data(), m2.size()));
    return child;
}

}  // namespace mvno
