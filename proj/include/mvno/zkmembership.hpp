#pragma once

#include <optional>
#include <vector>

#include "mvno/common.hpp"
#include "mvno/group.hpp"
#include "mvno/primitives.hpp"
#include "mvno/rng.hpp"

namespace mvno::zk {

// Non-interactive proof that a Pedersen commitment opens to an identity whose
// public tag appears in an authorized list, without revealing which entry.
// Construction: an (n+1)-branch OR of sigma protocols (one equality-of-exponent
// branch per list entry plus one knowledge-of-trapdoor branch), made
// non-interactive with Fiat-Shamir. The extra branch is what lets the CRS
// trapdoor holder simulate proofs for arbitrary statements.

enum class SecurityLevel : uint8_t { bits128 = 1 };

struct Crs {
    Point tag_base;    // tags are tag_offset + identity * tag_base
    Point tag_offset;
    Point sim_base;    // trapdoor statement: sim_anchor = td * sim_base
    Point sim_anchor;
    Bytes32 list_format_binding{};  // pins the list digest format version

    Bytes encode() const;
    static std::optional<Crs> decode(ByteSpan data);
    Bytes32 digest() const;
};

struct CrsTrapdoor {
    Scalar td;
};

Result<std::pair<Crs, CrsTrapdoor>> crs_gen(SecurityLevel level,
                                            std::optional<uint64_t> seed);

struct IdentityTag {
    Bytes32 enc{};

    bool operator==(const IdentityTag& o) const { return enc == o.enc; }
    bool operator<(const IdentityTag& o) const { return enc < o.enc; }
};

// Deterministic algebraic tag standing in for the scheme's hashed identity:
// one-way under DL, injective on the scalar domain, publishable.
IdentityTag make_tag(const Crs& crs, const Scalar& identity);

struct AuthorizedList {
    std::vector<IdentityTag> entries;
    uint32_t version = 0;

    Status add(const IdentityTag& tag);          // Duplicate
    Status remove(const IdentityTag& tag);       // UnknownTag
    std::optional<size_t> index_of(const IdentityTag& tag) const;
    // Merkle root over tag encodings, bound with the version counter.
    Bytes32 digest() const;
};

struct MembershipProof {
    uint32_t list_version = 0;
    struct Branch {
        Scalar e, z1, z2;
    };
    std::vector<Branch> branches;  // one per list entry
    Scalar e_sim, z_sim;           // trapdoor branch

    // 1-byte format version, 4-byte big-endian list version, then the
    // sigma-protocol components as fixed-width big-endian scalars.
    Bytes encode() const;
    static std::optional<MembershipProof> decode(ByteSpan data);
    size_t encoded_size() const { return 9 + 96 * branches.size() + 64; }
};

// context binds caller data (e.g. session public keys) into the challenge.
Result<MembershipProof> prove_membership(const Crs& crs, const CommitmentKey& ck,
                                         const Scalar& identity, const Scalar& r,
                                         const AuthorizedList& list, ByteSpan context,
                                         Rng& rng);

bool verify_membership(const Crs& crs, const CommitmentKey& ck, const Commitment& c,
                       const AuthorizedList& list, const MembershipProof& proof,
                       ByteSpan context);

Result<MembershipProof> simulate_proof(const Crs& crs, const CrsTrapdoor& td,
                                       const CommitmentKey& ck, const Commitment& c,
                                       const AuthorizedList& list, ByteSpan context, Rng& rng);

namespace detail {
// Runs the prover with a caller-chosen branch index and witness, skipping the
// membership precheck. The public prover resolves the index itself; tests use
// this entry point to exercise soundness with lying witnesses.
MembershipProof prove_at_index(const Crs& crs, const CommitmentKey& ck, const Scalar& identity,
                               const Scalar& r, size_t index, const AuthorizedList& list,
                               ByteSpan context, Rng& rng);
}  // namespace detail

}  // namespace mvno::zk
