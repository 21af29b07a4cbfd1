#include <doctest.h>

#include <set>

#include "mvno/primitives.hpp"

using namespace mvno;

namespace {

BlockVec make_blocks(std::initializer_list<const char*> parts) {
    BlockVec v;
    for (const char* p : parts) {
        auto s = as_span(std::string(p));
        v.emplace_back(s.begin(), s.end());
    }
    return v;
}

struct Fixture {
    Rng rng{11};
    SigKeyPair signer = SigKeyPair::generate(rng);
    ChameleonKeyPair sanitizer = ChameleonKeyPair::generate(rng);
};

}  // namespace

TEST_CASE("sign then verify, unmodified") {
    Fixture f;
    auto blocks = make_blocks({"location", "expiry", "id-and-time"});
    auto adm = AdmPolicy::from_indices({2});
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(sig.ok());
    CHECK(sansig_verify(blocks, sig.value(), f.signer.verify_key, f.sanitizer.hash_key));
}

TEST_CASE("invalid adm is rejected at signing") {
    Fixture f;
    auto blocks = make_blocks({"a", "b"});
    auto adm = AdmPolicy::from_indices({5});  // beyond block count
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(!sig.ok());
    CHECK(sig.error() == Err::InvalidAdm);
}

TEST_CASE("any unsanitized single-block edit is rejected") {
    // Verification oracle over all single-block edits of a 4-block message:
    // without a sanitation, neither fixed nor modifiable blocks may change.
    Fixture f;
    auto blocks = make_blocks({"alpha", "beta", "gamma", "delta"});
    auto adm = AdmPolicy::from_indices({1, 3});
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(sig.ok());

    for (size_t i = 0; i < blocks.size(); i++) {
        BlockVec edited = blocks;
        edited[i].push_back('!');
        CHECK(!sansig_verify(edited, sig.value(), f.signer.verify_key, f.sanitizer.hash_key));
        BlockVec flipped = blocks;
        flipped[i][0] ^= 0x01;
        CHECK(!sansig_verify(flipped, sig.value(), f.signer.verify_key, f.sanitizer.hash_key));
    }
}

TEST_CASE("sanitizing the designated block keeps the signature valid") {
    Fixture f;
    auto blocks = make_blocks({"fixed-part", "mutable-part"});
    auto adm = AdmPolicy::from_indices({1});
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(sig.ok());

    Bytes repl = to_bytes(as_span(std::string("rewritten")));
    auto out = sansig_sanit(blocks, {{1, repl}}, sig.value(), f.sanitizer);
    REQUIRE(out.ok());
    auto& [blocks2, sig2] = out.value();
    CHECK(blocks2[0] == blocks[0]);  // fixed part byte-identical
    CHECK(blocks2[1] == repl);
    CHECK(sansig_verify(blocks2, sig2, f.signer.verify_key, f.sanitizer.hash_key));
}

TEST_CASE("sanitizing a fixed block is an error") {
    Fixture f;
    auto blocks = make_blocks({"fixed-part", "mutable-part"});
    auto adm = AdmPolicy::from_indices({1});
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(sig.ok());

    Bytes repl = {0x42};
    auto out = sansig_sanit(blocks, {{0, repl}}, sig.value(), f.sanitizer);
    REQUIRE(!out.ok());
    CHECK(out.error() == Err::InvalidAdm);
}

TEST_CASE("repeated sanitation with different replacements") {
    Fixture f;
    auto blocks = make_blocks({"fixed", "mutable"});
    auto adm = AdmPolicy::from_indices({1});
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(sig.ok());

    Bytes r1 = to_bytes(as_span(std::string("first")));
    Bytes r2 = to_bytes(as_span(std::string("second")));
    auto out1 = sansig_sanit(blocks, {{1, r1}}, sig.value(), f.sanitizer);
    auto out2 = sansig_sanit(blocks, {{1, r2}}, sig.value(), f.sanitizer);
    REQUIRE(out1.ok());
    REQUIRE(out2.ok());
    CHECK(sansig_verify(out1.value().first, out1.value().second, f.signer.verify_key,
                        f.sanitizer.hash_key));
    CHECK(sansig_verify(out2.value().first, out2.value().second, f.signer.verify_key,
                        f.sanitizer.hash_key));
    CHECK(out1.value().second.encode() != out2.value().second.encode());

    // chained sanitation of a sanitized message also verifies
    auto out3 = sansig_sanit(out1.value().first, {{1, r2}}, out1.value().second, f.sanitizer);
    REQUIRE(out3.ok());
    CHECK(sansig_verify(out3.value().first, out3.value().second, f.signer.verify_key,
                        f.sanitizer.hash_key));
}

TEST_CASE("wrong keys are rejected") {
    Fixture f;
    Rng rng2(12);
    auto other_signer = SigKeyPair::generate(rng2);
    auto other_san = ChameleonKeyPair::generate(rng2);

    auto blocks = make_blocks({"fixed", "mutable"});
    auto adm = AdmPolicy::from_indices({1});
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(sig.ok());

    CHECK(!sansig_verify(blocks, sig.value(), other_signer.verify_key, f.sanitizer.hash_key));
    CHECK(!sansig_verify(blocks, sig.value(), f.signer.verify_key, other_san.hash_key));

    // sanitizing with a foreign trapdoor produces a signature that fails
    Bytes repl = {0x01};
    auto out = sansig_sanit(blocks, {{1, repl}}, sig.value(), other_san);
    REQUIRE(out.ok());
    CHECK(!sansig_verify(out.value().first, out.value().second, f.signer.verify_key,
                         f.sanitizer.hash_key));
}

TEST_CASE("sanitizability over random policies on up to 8 blocks") {
    Fixture f;
    for (int trial = 0; trial < 60; trial++) {
        size_t n = 1 + f.rng.uniform(8);
        BlockVec blocks;
        for (size_t i = 0; i < n; i++) blocks.push_back(f.rng.bytes(1 + f.rng.uniform(24)));
        AdmPolicy adm;
        for (size_t i = 0; i < n; i++) {
            if (f.rng.coin()) adm.mask |= uint16_t(1) << i;
        }
        auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
        REQUIRE(sig.ok());

        std::vector<std::pair<size_t, Bytes>> mods;
        for (size_t i = 0; i < n; i++) {
            if (adm.modifiable(i)) mods.emplace_back(i, f.rng.bytes(1 + f.rng.uniform(24)));
        }
        auto out = sansig_sanit(blocks, mods, sig.value(), f.sanitizer);
        REQUIRE(out.ok());
        CHECK(sansig_verify(out.value().first, out.value().second, f.signer.verify_key,
                            f.sanitizer.hash_key));

        // immutability: fixed blocks stay untouchable even after sanitation
        for (size_t i = 0; i < n; i++) {
            if (!adm.modifiable(i)) {
                BlockVec tampered = out.value().first;
                tampered[i].push_back(0xFF);
                CHECK(!sansig_verify(tampered, out.value().second, f.signer.verify_key,
                                     f.sanitizer.hash_key));
                break;
            }
        }
    }
}

TEST_CASE("forgery sampling with oracle access finds nothing") {
    // Chosen-message oracle for 100 messages, then random forgeries on a
    // fresh message. The acceptance suite runs the full 10^4 attempts.
    Fixture f;
    auto adm = AdmPolicy::from_indices({0});
    for (int i = 0; i < 100; i++) {
        BlockVec blocks = {f.rng.bytes(16), f.rng.bytes(16)};
        auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
        REQUIRE(sig.ok());
    }

    BlockVec fresh = {to_bytes(as_span(std::string("never"))),
                      to_bytes(as_span(std::string("signed")))};
    int accepts = 0;
    for (int i = 0; i < 2000; i++) {
        SanSig forged;
        forged.n_blocks = 2;
        forged.adm = adm;
        forged.rand.push_back(Scalar::random(f.rng));
        f.rng.fill(forged.sig.data(), forged.sig.size());
        if (sansig_verify(fresh, forged, f.signer.verify_key, f.sanitizer.hash_key)) accepts++;
    }
    CHECK(accepts == 0);
}

TEST_CASE("sansig encoding round trip") {
    Fixture f;
    auto blocks = make_blocks({"one", "two", "three"});
    auto adm = AdmPolicy::from_indices({0, 2});
    auto sig = sansig_sign(blocks, f.signer, f.sanitizer.hash_key, adm, f.rng);
    REQUIRE(sig.ok());

    Bytes enc = sig.value().encode();
    auto dec = SanSig::decode(ByteSpan(enc.data(), enc.size()));
    REQUIRE(dec);
    CHECK(dec->encode() == enc);
    CHECK(sansig_verify(blocks, *dec, f.signer.verify_key, f.sanitizer.hash_key));

    CHECK(!SanSig::decode(ByteSpan(enc.data(), enc.size() - 1)).has_value());
    CHECK(!SanSig::decode(ByteSpan(enc.data(), 2)).has_value());
}
