#include "mvno/hash.hpp"

#include <sodium.h>

#include <mutex>
#include <stdexcept>

namespace mvno {

void ensure_sodium_init() {
    static std::once_flag flag;
    std::call_once(flag, [] {
        if (sodium_init() < 0) throw std::runtime_error("libsodium init failed");
    });
}

namespace {

void domain_prefix(crypto_generichash_state& st, const std::string& domain) {
    uint8_t len = uint8_t(domain.size());
    crypto_generichash_update(&st, &len, 1);
    crypto_generichash_update(&st, reinterpret_cast<const uint8_t*>(domain.data()),
                              domain.size());
}

}  // namespace

Bytes32 hash32(const std::string& domain, ByteSpan data) {
    ensure_sodium_init();
    crypto_generichash_state st;
    crypto_generichash_init(&st, nullptr, 0, 32);
    domain_prefix(st, domain);
    crypto_generichash_update(&st, data.data(), data.size());
    Bytes32 out;
    crypto_generichash_final(&st, out.data(), out.size());
    return out;
}

Bytes64 hash64(const std::string& domain, ByteSpan data) {
    ensure_sodium_init();
    crypto_generichash_state st;
    crypto_generichash_init(&st, nullptr, 0, 64);
    domain_prefix(st, domain);
    crypto_generichash_update(&st, data.data(), data.size());
    Bytes64 out;
    crypto_generichash_final(&st, out.data(), out.size());
    return out;
}

Hasher::Hasher(const std::string& domain) {
    ensure_sodium_init();
    auto* st = new crypto_generichash_state;
    crypto_generichash_init(st, nullptr, 0, 64);
    domain_prefix(*st, domain);
    state_ = st;
}

Hasher::~Hasher() { delete static_cast<crypto_generichash_state*>(state_); }

Hasher& Hasher::field(ByteSpan data) {
    auto* st = static_cast<crypto_generichash_state*>(state_);
    uint8_t len[8];
    uint64_t n = data.size();
    for (int i = 0; i < 8; i++) len[i] = uint8_t(n >> (8 * (7 - i)));
    crypto_generichash_update(st, len, 8);
    crypto_generichash_update(st, data.data(), data.size());
    return *this;
}

Hasher& Hasher::field_u64(uint64_t v) {
    uint8_t b[8];
    for (int i = 0; i < 8; i++) b[i] = uint8_t(v >> (8 * (7 - i)));
    return field(ByteSpan(b, 8));
}

Bytes64 Hasher::final64() {
    auto* st = static_cast<crypto_generichash_state*>(state_);
    Bytes64 out;
    crypto_generichash_final(st, out.data(), out.size());
    return out;
}

Bytes32 Hasher::final32() {
    Bytes64 wide = final64();
    Bytes32 out;
    std::memcpy(out.data(), wide.data(), 32);
    return out;
}

Bytes32 merkle_root(const std::vector<Bytes32>& leaves) {
    if (leaves.empty()) return Bytes32{};
    std::vector<Bytes32> level;
    level.reserve(leaves.size());
    for (const auto& leaf : leaves) {
        Bytes l;
        l.push_back(0x00);
        append(l, ByteSpan(leaf.data(), leaf.size()));
        level.push_back(hash32("mvno/merkle", l));
    }
    while (level.size() > 1) {
        std::vector<Bytes32> next;
        next.reserve((level.size() + 1) / 2);
        for (size_t i = 0; i + 1 < level.size(); i += 2) {
            Bytes pair;
            pair.push_back(0x01);
            append(pair, ByteSpan(level[i].data(), 32));
            append(pair, ByteSpan(level[i + 1].data(), 32));
            next.push_back(hash32("mvno/merkle", pair));
        }
        if (level.size() & 1) next.push_back(level.back());
        level = std::move(next);
    }
    return level[0];
}

}  // namespace mvno
