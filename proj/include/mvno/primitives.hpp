#pragma once

#include <utility>
#include <vector>

#include "mvno/common.hpp"
#include "mvno/group.hpp"
#include "mvno/rng.hpp"

namespace mvno {

// ---- digital signature (Ed25519) ----

using Signature = Bytes64;

struct SigKeyPair {
    Bytes32 verify_key;
    std::array<uint8_t, 64> signing_key;

    static SigKeyPair generate(Rng& rng);
};

Signature sign(const SigKeyPair& kp, ByteSpan msg);
bool sig_verify(const Bytes32& verify_key, ByteSpan msg, const Signature& sig);

// ---- public-key encryption (X25519 + XSalsa20-Poly1305, sealed-box format) ----

struct EncKeyPair {
    Bytes32 enc_key;
    Bytes32 dec_key;

    static EncKeyPair generate(Rng& rng);
};

inline constexpr size_t PKE_OVERHEAD = 32 + 16;  // ephemeral key + MAC

// Randomness comes from the caller's generator; the output is byte-compatible
// with libsodium sealed boxes.
Bytes pke_encrypt(const Bytes32& enc_key, ByteSpan msg, Rng& rng);
std::optional<Bytes> pke_decrypt(const EncKeyPair& kp, ByteSpan ciphertext);

// ---- Pedersen commitment ----

struct CommitmentKey {
    Point g_m;  // message generator
    Point g_r;  // randomness generator

    // Both generators are derived by hashing, so no discrete-log relation
    // between them is known to anyone.
    static CommitmentKey derive(ByteSpan seed_material);
    Bytes32 digest() const;
};

struct Commitment {
    Point value;

    Bytes32 bytes() const { return value.encode(); }
    bool operator==(const Commitment& o) const { return value == o.value; }
};

Commitment commit(const CommitmentKey& ck, const Scalar& m, const Scalar& r);
// Returns m when (m, r) opens c, nothing otherwise.
std::optional<Scalar> decommit(const CommitmentKey& ck, const Commitment& c, const Scalar& m,
                               const Scalar& r);

// ---- chameleon hash ----

struct ChameleonKeyPair {
    Scalar trapdoor;  // nonzero
    Point hash_key;

    static ChameleonKeyPair generate(Rng& rng);
};

// CH(m, r) = m*G_ch + r*hash_key.
Point ch_hash(const Point& hash_key, const Scalar& m, const Scalar& r);
// r' such that CH(m_new, r') = CH(m_old, r_old).
Scalar ch_collide(const ChameleonKeyPair& kp, const Scalar& m_old, const Scalar& r_old,
                  const Scalar& m_new);

// ---- sanitizable signature (chameleon-hash-then-sign) ----

// Which block indices a sanitizer may rewrite. At most 16 blocks.
struct AdmPolicy {
    uint16_t mask = 0;

    static AdmPolicy from_indices(std::initializer_list<size_t> indices);
    bool modifiable(size_t i) const { return i < 16 && (mask >> i) & 1; }
    size_t count_below(size_t n) const;
    bool valid_for(size_t n_blocks) const;
};

struct SanSigKeys {
    SigKeyPair signer;
    ChameleonKeyPair sanitizer;
};

struct SanSig {
    uint8_t n_blocks = 0;
    AdmPolicy adm;
    std::vector<Scalar> rand;  // one entry per modifiable block, index order
    Signature sig{};

    Bytes encode() const;
    static std::optional<SanSig> decode(ByteSpan data);
};

using BlockVec = std::vector<Bytes>;

// Modifiable blocks are bound through the chameleon hash under pk_san, fixed
// blocks through a plain hash; the signer signs the digest sequence.
Result<SanSig> sansig_sign(const BlockVec& blocks, const SigKeyPair& signer,
                           const Point& pk_san, AdmPolicy adm, Rng& rng);

// Replaces ADM-designated blocks; the signature stays valid. The caller is
// responsible for having verified the input signature.
Result<std::pair<BlockVec, SanSig>> sansig_sanit(
    const BlockVec& blocks, const std::vector<std::pair<size_t, Bytes>>& mods,
    const SanSig& sig, const ChameleonKeyPair& sanitizer);

bool sansig_verify(const BlockVec& blocks, const SanSig& sig, const Bytes32& pk_sig,
                   const Point& pk_san);

}  // namespace mvno
