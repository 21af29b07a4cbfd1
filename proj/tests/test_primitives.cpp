#include <doctest.h>
#include <sodium.h>

#include <map>
#include <set>

#include "mvno/classifier.hpp"
#include "mvno/hash.hpp"
#include "mvno/primitives.hpp"

using namespace mvno;

TEST_CASE("commit of (0, 0) is the group identity") {
    auto ck = CommitmentKey::derive(as_span("test-ck"));
    CHECK(commit(ck, Scalar(), Scalar()).value.is_identity());
}

TEST_CASE("commit/decommit round trip and binding rejection") {
    auto ck = CommitmentKey::derive(as_span("test-ck"));
    Rng rng(1);
    Scalar m = Scalar::from_u64(7), r = Scalar::random(rng);
    Commitment c = commit(ck, m, r);

    auto opened = decommit(ck, c, m, r);
    REQUIRE(opened);
    CHECK(*opened == m);

    CHECK(!decommit(ck, c, Scalar::from_u64(8), r).has_value());
}

TEST_CASE("same message, different randomness: distinct commitments") {
    auto ck = CommitmentKey::derive(as_span("test-ck"));
    Rng rng(2);
    Scalar m = Scalar::from_u64(5);
    for (int i = 0; i < 100; i++) {
        Scalar r1 = Scalar::random(rng), r2 = Scalar::random(rng);
        if (r1 == r2) continue;
        CHECK(!(commit(ck, m, r1) == commit(ck, m, r2)));
    }
}

TEST_CASE("decommit over a 4-bit toy message space accepts exactly one value") {
    auto ck = CommitmentKey::derive(as_span("test-ck"));
    Rng rng(3);
    Scalar r = Scalar::random(rng);
    Commitment c = commit(ck, Scalar::from_u64(11), r);
    int accepted = 0;
    for (uint64_t m = 0; m < 16; m++) {
        if (decommit(ck, c, Scalar::from_u64(m), r)) accepted++;
    }
    CHECK(accepted == 1);
}

TEST_CASE("commitment binding: brute force over toy scalar space") {
    // Collision hunt over random (m, r) pairs drawn from a 16-bit toy space.
    // The acceptance suite runs the full 10^5 trials; this is the fast pass.
    auto ck = CommitmentKey::derive(as_span("test-ck"));
    Rng rng(4);
    std::map<Bytes32, std::pair<uint16_t, uint16_t>> seen;
    for (int i = 0; i < 20000; i++) {
        uint16_t m = uint16_t(rng.uniform(1 << 16));
        uint16_t r = uint16_t(rng.uniform(1 << 16));
        Bytes32 enc = commit(ck, Scalar::from_u64(m), Scalar::from_u64(r)).bytes();
        auto [it, fresh] = seen.emplace(enc, std::make_pair(m, r));
        if (!fresh) {
            CHECK(it->second == std::make_pair(m, r));
        }
    }
}

TEST_CASE("commitment hiding proxy: classifier at chance level") {
    auto ck = CommitmentKey::derive(as_span("test-ck"));
    Rng rng(5);
    Scalar fixed_m = Scalar::from_u64(1234);
    std::vector<Bytes> fixed, random;
    for (int i = 0; i < 1000; i++) {
        auto c1 = commit(ck, fixed_m, Scalar::random(rng)).bytes();
        fixed.emplace_back(c1.begin(), c1.end());
        auto c2 = commit(ck, Scalar::random(rng), Scalar::random(rng)).bytes();
        random.emplace_back(c2.begin(), c2.end());
    }
    // pairwise distinct values for the fixed message
    std::set<Bytes> uniq(fixed.begin(), fixed.end());
    CHECK(uniq.size() == fixed.size());

    std::vector<Bytes> train0(fixed.begin(), fixed.begin() + 500);
    std::vector<Bytes> train1(random.begin(), random.begin() + 500);
    std::vector<Bytes> test0(fixed.begin() + 500, fixed.end());
    std::vector<Bytes> test1(random.begin() + 500, random.end());

    ByteClassifier clf(32, 99);
    clf.train(train0, train1);
    CHECK(clf.accuracy(test0, test1) <= 0.55);
}

TEST_CASE("signature round trip, including the empty message") {
    Rng rng(6);
    auto kp = SigKeyPair::generate(rng);
    Bytes empty;
    auto sig = sign(kp, ByteSpan(empty.data(), 0));
    CHECK(sig_verify(kp.verify_key, ByteSpan(empty.data(), 0), sig));

    Bytes msg = {1, 2, 3, 4};
    auto sig2 = sign(kp, ByteSpan(msg.data(), msg.size()));
    CHECK(sig_verify(kp.verify_key, ByteSpan(msg.data(), msg.size()), sig2));

    // single bit flips in message and signature are rejected
    Bytes bad = msg;
    bad[2] ^= 0x10;
    CHECK(!sig_verify(kp.verify_key, ByteSpan(bad.data(), bad.size()), sig2));
    auto sig3 = sig2;
    sig3[10] ^= 0x01;
    CHECK(!sig_verify(kp.verify_key, ByteSpan(msg.data(), msg.size()), sig3));
}

TEST_CASE("signature forgery sampling finds nothing") {
    Rng rng(7);
    auto kp = SigKeyPair::generate(rng);
    Bytes msg = {0xde, 0xad, 0xbe, 0xef};
    int accepts = 0;
    for (int i = 0; i < 1000; i++) {
        Bytes32 pk = rng.bytes32();
        Signature sig;
        rng.fill(sig.data(), sig.size());
        if (sig_verify(pk, ByteSpan(msg.data(), msg.size()), sig)) accepts++;
        if (sig_verify(kp.verify_key, ByteSpan(msg.data(), msg.size()), sig)) accepts++;
    }
    CHECK(accepts == 0);
}

TEST_CASE("pke round trip, wrong key, and randomization") {
    Rng rng(8);
    auto kp = EncKeyPair::generate(rng);
    Bytes msg = rng.bytes(128);

    Bytes ct = pke_encrypt(kp.enc_key, ByteSpan(msg.data(), msg.size()), rng);
    CHECK(ct.size() == msg.size() + PKE_OVERHEAD);
    auto back = pke_decrypt(kp, ByteSpan(ct.data(), ct.size()));
    REQUIRE(back);
    CHECK(*back == msg);

    auto other = EncKeyPair::generate(rng);
    CHECK(!pke_decrypt(other, ByteSpan(ct.data(), ct.size())).has_value());

    // tampering trips the MAC
    Bytes bad = ct;
    bad[40] ^= 1;
    CHECK(!pke_decrypt(kp, ByteSpan(bad.data(), bad.size())).has_value());
    CHECK(!pke_decrypt(kp, ByteSpan(ct.data(), ct.size() - 1)).has_value());

    std::set<Bytes> cts;
    for (int i = 0; i < 100; i++) {
        cts.insert(pke_encrypt(kp.enc_key, ByteSpan(msg.data(), msg.size()), rng));
    }
    CHECK(cts.size() == 100);
}

TEST_CASE("pke is sealed-box compatible in both directions") {
    ensure_sodium_init();
    Rng rng(9);
    auto kp = EncKeyPair::generate(rng);
    Bytes msg = rng.bytes(64);

    // ours -> sodium
    Bytes ct = pke_encrypt(kp.enc_key, ByteSpan(msg.data(), msg.size()), rng);
    Bytes opened(msg.size());
    REQUIRE(crypto_box_seal_open(opened.data(), ct.data(), ct.size(), kp.enc_key.data(),
                                 kp.dec_key.data()) == 0);
    CHECK(opened == msg);

    // sodium -> ours
    Bytes sealed(msg.size() + crypto_box_SEALBYTES);
    REQUIRE(crypto_box_seal(sealed.data(), msg.data(), msg.size(), kp.enc_key.data()) == 0);
    auto back = pke_decrypt(kp, ByteSpan(sealed.data(), sealed.size()));
    REQUIRE(back);
    CHECK(*back == msg);
}

TEST_CASE("chameleon hash collisions via the trapdoor") {
    Rng rng(10);
    auto kp = ChameleonKeyPair::generate(rng);
    Scalar m = Scalar::random(rng), r = Scalar::random(rng);
    Scalar m2 = Scalar::random(rng);

    Point h = ch_hash(kp.hash_key, m, r);
    Scalar r2 = ch_collide(kp, m, r, m2);
    CHECK(ch_hash(kp.hash_key, m2, r2) == h);

    // a fresh randomness without the trapdoor misses
    Scalar r3 = Scalar::random(rng);
    CHECK(!(ch_hash(kp.hash_key, m2, r3) == h));
}
