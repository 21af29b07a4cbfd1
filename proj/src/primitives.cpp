#include "mvno/primitives.hpp"

#include <sodium.h>

#include "mvno/hash.hpp"

namespace mvno {

SigKeyPair SigKeyPair::generate(Rng& rng) {
    ensure_sodium_init();
    Bytes32 seed = rng.bytes32();
    SigKeyPair kp;
    crypto_sign_seed_keypair(kp.verify_key.data(), kp.signing_key.data(), seed.data());
    return kp;
}

Signature sign(const SigKeyPair& kp, ByteSpan msg) {
    ensure_sodium_init();
    Signature sig;
    crypto_sign_detached(sig.data(), nullptr, msg.data(), msg.size(), kp.signing_key.data());
    return sig;
}

bool sig_verify(const Bytes32& verify_key, ByteSpan msg, const Signature& sig) {
    ensure_sodium_init();
    return crypto_sign_verify_detached(sig.data(), msg.data(), msg.size(),
                                       verify_key.data()) == 0;
}

EncKeyPair EncKeyPair::generate(Rng& rng) {
    ensure_sodium_init();
    Bytes32 seed = rng.bytes32();
    EncKeyPair kp;
    crypto_box_seed_keypair(kp.enc_key.data(), kp.dec_key.data(), seed.data());
    return kp;
}

namespace {

void seal_nonce(uint8_t nonce[crypto_box_NONCEBYTES], const uint8_t* epk, const uint8_t* rpk) {
    crypto_generichash_state st;
    crypto_generichash_init(&st, nullptr, 0, crypto_box_NONCEBYTES);
    crypto_generichash_update(&st, epk, 32);
    crypto_generichash_update(&st, rpk, 32);
    crypto_generichash_final(&st, nonce, crypto_box_NONCEBYTES);
}

}  // namespace

Bytes pke_encrypt(const Bytes32& enc_key, ByteSpan msg, Rng& rng) {
    ensure_sodium_init();
    Bytes32 eseed = rng.bytes32();
    Bytes32 epk, esk;
    crypto_box_seed_keypair(epk.data(), esk.data(), eseed.data());

    uint8_t nonce[crypto_box_NONCEBYTES];
    seal_nonce(nonce, epk.data(), enc_key.data());

    Bytes out(32 + msg.size() + crypto_box_MACBYTES);
    std::memcpy(out.data(), epk.data(), 32);
    if (crypto_box_easy(out.data() + 32, msg.data(), msg.size(), nonce, enc_key.data(),
                        esk.data()) != 0) {
        out.clear();  // unreachable with valid keys
    }
    sodium_memzero(esk.data(), esk.size());
    return out;
}

std::optional<Bytes> pke_decrypt(const EncKeyPair& kp, ByteSpan ciphertext) {
    ensure_sodium_init();
    if (ciphertext.size() < 32 + crypto_box_MACBYTES) return std::nullopt;

    uint8_t nonce[crypto_box_NONCEBYTES];
    seal_nonce(nonce, ciphertext.data(), kp.enc_key.data());

    Bytes msg(ciphertext.size() - 32 - crypto_box_MACBYTES);
    if (crypto_box_open_easy(msg.data(), ciphertext.data() + 32, ciphertext.size() - 32, nonce,
                             ciphertext.data(), kp.dec_key.data()) != 0) {
        return std::nullopt;
    }
    return msg;
}

CommitmentKey CommitmentKey::derive(ByteSpan seed_material) {
    CommitmentKey ck;
    ck.g_m = Point::from_hash("mvno/ck/g-message", seed_material);
    ck.g_r = Point::from_hash("mvno/ck/g-randomness", seed_material);
    return ck;
}

Bytes32 CommitmentKey::digest() const {
    Hasher h("mvno/ck-digest");
    auto gm = g_m.encode(), gr = g_r.encode();
    h.field(ByteSpan(gm.data(), 32)).field(ByteSpan(gr.data(), 32));
    return h.final32();
}

Commitment commit(const CommitmentKey& ck, const Scalar& m, const Scalar& r) {
    return Commitment{double_mul(m, ck.g_m, r, ck.g_r)};
}

std::optional<Scalar> decommit(const CommitmentKey& ck, const Commitment& c, const Scalar& m,
                               const Scalar& r) {
    if (commit(ck, m, r).value == c.value) return m;
    return std::nullopt;
}

namespace {

const Point& chameleon_base() {
    static const Point g = Point::from_hash("mvno/chameleon-base", {});
    return g;
}

}  // namespace

ChameleonKeyPair ChameleonKeyPair::generate(Rng& rng) {
    ChameleonKeyPair kp;
    do {
        kp.trapdoor = Scalar::random(rng);
    } while (kp.trapdoor.is_zero());
    kp.hash_key = chameleon_base() * kp.trapdoor;
    return kp;
}

Point ch_hash(const Point& hash_key, const Scalar& m, const Scalar& r) {
    return double_mul(m, chameleon_base(), r, hash_key);
}

Scalar ch_collide(const ChameleonKeyPair& kp, const Scalar& m_old, const Scalar& r_old,
                  const Scalar& m_new) {
    // m_old + x*r_old = m_new + x*r'  =>  r' = r_old + (m_old - m_new)/x
    auto inv = kp.trapdoor.invert();
    return r_old + (m_old - m_new) * (*inv);
}

AdmPolicy AdmPolicy::from_indices(std::initializer_list<size_t> indices) {
    AdmPolicy p;
    for (size_t i : indices) p.mask |= uint16_t(1) << i;
    return p;
}

size_t AdmPolicy::count_below(size_t n) const {
    size_t c = 0;
    for (size_t i = 0; i < n && i < 16; i++) c += modifiable(i);
    return c;
}

bool AdmPolicy::valid_for(size_t n_blocks) const {
    if (n_blocks > 16) return false;
    return n_blocks == 16 || (mask >> n_blocks) == 0;  // no index beyond the last block
}

Bytes SanSig::encode() const {
    Bytes out;
    out.push_back(n_blocks);
    append_u16_be(out, adm.mask);
    out.push_back(uint8_t(rand.size()));
    for (const auto& r : rand) append(out, ByteSpan(r.bytes_be().data(), 32));
    append(out, ByteSpan(sig.data(), 64));
    return out;
}

std::optional<SanSig> SanSig::decode(ByteSpan data) {
    if (data.size() < 4) return std::nullopt;
    SanSig s;
    s.n_blocks = data[0];
    s.adm.mask = uint16_t(uint16_t(data[1]) << 8 | data[2]);
    size_t n_rand = data[3];
    if (data.size() != 4 + 32 * n_rand + 64) return std::nullopt;
    size_t off = 4;
    for (size_t i = 0; i < n_rand; i++) {
        Bytes32 b;
        std::memcpy(b.data(), data.data() + off, 32);
        auto r = Scalar::from_bytes_be(b);
        if (!r) return std::nullopt;
        s.rand.push_back(*r);
        off += 32;
    }
    std::memcpy(s.sig.data(), data.data() + off, 64);
    return s;
}

namespace {

Scalar block_scalar(size_t index, ByteSpan block) {
    Hasher h("mvno/sansig-block");
    h.field_u64(index).field(block);
    return Scalar::reduce64(h.final64());
}

// Digest sequence the signer commits to: fixed blocks by plain hash,
// modifiable blocks by their chameleon hash point.
Bytes32 sansig_payload(const BlockVec& blocks, const SanSig& s, const Point& pk_san) {
    Hasher h("mvno/sansig-payload");
    auto san = pk_san.encode();
    h.field(ByteSpan(san.data(), 32));
    h.field_u64(s.n_blocks);
    h.field_u64(s.adm.mask);
    size_t ri = 0;
    for (size_t i = 0; i < blocks.size(); i++) {
        ByteSpan blk(blocks[i].data(), blocks[i].size());
        if (s.adm.modifiable(i)) {
            Point ch = ch_hash(pk_san, block_scalar(i, blk), s.rand[ri++]);
            auto enc = ch.encode();
            h.field(ByteSpan(enc.data(), 32));
        } else {
            Hasher hb("mvno/sansig-fixed");
            hb.field_u64(i).field(blk);
            auto d = hb.final32();
            h.field(ByteSpan(d.data(), 32));
        }
    }
    return h.final32();
}

}  // namespace

Result<SanSig> sansig_sign(const BlockVec& blocks, const SigKeyPair& signer,
                           const Point& pk_san, AdmPolicy adm, Rng& rng) {
    if (!adm.valid_for(blocks.size())) return Err::InvalidAdm;
    SanSig s;
    s.n_blocks = uint8_t(blocks.size());
    s.adm = adm;
    for (size_t i = 0; i < blocks.size(); i++) {
        if (adm.modifiable(i)) s.rand.push_back(Scalar::random(rng));
    }
    Bytes32 payload = sansig_payload(blocks, s, pk_san);
    s.sig = sign(signer, ByteSpan(payload.data(), 32));
    return s;
}

Result<std::pair<BlockVec, SanSig>> sansig_sanit(
    const BlockVec& blocks, const std::vector<std::pair<size_t, Bytes>>& mods,
    const SanSig& sig, const ChameleonKeyPair& sanitizer) {
    if (sig.n_blocks != blocks.size()) return Err::InvalidAdm;
    BlockVec out = blocks;
    SanSig s2 = sig;
    for (const auto& [idx, replacement] : mods) {
        if (idx >= blocks.size() || !sig.adm.modifiable(idx)) return Err::InvalidAdm;
        size_t ri = sig.adm.count_below(idx);
        Scalar m_old = block_scalar(idx, ByteSpan(out[idx].data(), out[idx].size()));
        Scalar m_new = block_scalar(idx, ByteSpan(replacement.data(), replacement.size()));
        s2.rand[ri] = ch_collide(sanitizer, m_old, s2.rand[ri], m_new);
        out[idx] = replacement;
    }
    return std::make_pair(std::move(out), std::move(s2));
}

bool sansig_verify(const BlockVec& blocks, const SanSig& sig, const Bytes32& pk_sig,
                   const Point& pk_san) {
    if (sig.n_blocks != blocks.size()) return false;
    if (!sig.adm.valid_for(blocks.size())) return false;
    if (sig.rand.size() != sig.adm.count_below(blocks.size())) return false;
    Bytes32 payload = sansig_payload(blocks, sig, pk_san);
    return sig_verify(pk_sig, ByteSpan(payload.data(), 32), sig.sig);
}

}  // namespace mvno
