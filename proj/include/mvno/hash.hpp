#pragma once

#include "mvno/common.hpp"

namespace mvno {

// BLAKE2b wrappers. Every use site passes a domain label so that no two
// contexts ever hash the same preimage.
Bytes32 hash32(const std::string& domain, ByteSpan data);
Bytes64 hash64(const std::string& domain, ByteSpan data);

// Incremental hasher for multi-part transcripts (Fiat-Shamir inputs,
// signature payloads). Fields are length-prefixed, so the encoding of the
// stream is unambiguous.
class Hasher {
  public:
    explicit Hasher(const std::string& domain);
    ~Hasher();
    Hasher(const Hasher&) = delete;
    Hasher& operator=(const Hasher&) = delete;

    Hasher& field(ByteSpan data);
    Hasher& field(const std::string& s) { return field(as_span(s)); }
    Hasher& field_u64(uint64_t v);

    Bytes32 final32();
    Bytes64 final64();

  private:
    void* state_;  // crypto_generichash_state, kept out of the header
};

// Merkle root over 32-byte leaves; an odd node is promoted unchanged.
// Empty input yields the all-zero root.
Bytes32 merkle_root(const std::vector<Bytes32>& leaves);

void ensure_sodium_init();

}  // namespace mvno
