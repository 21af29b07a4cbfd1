#include "mvno/zkmembership.hpp"

#include "mvno/hash.hpp"

namespace mvno::zk {

namespace {

constexpr uint8_t CRS_FORMAT = 1;
constexpr uint8_t PROOF_FORMAT = 1;
constexpr uint64_t LIST_DIGEST_FORMAT = 1;
constexpr const char* CRS_LABEL = "mvno-zk-membership-v1";

// Fixed-base tables pay off once each base is touched this many times.
constexpr size_t TABLE_THRESHOLD = 64;

}  // namespace

Bytes Crs::encode() const {
    Bytes out;
    out.push_back(CRS_FORMAT);
    append_u16_be(out, uint16_t(std::string(CRS_LABEL).size()));
    append(out, std::string(CRS_LABEL));
    for (const Point* p : {&tag_base, &tag_offset, &sim_base, &sim_anchor}) {
        auto e = p->encode();
        append(out, ByteSpan(e.data(), 32));
    }
    append(out, ByteSpan(list_format_binding.data(), 32));
    return out;
}

std::optional<Crs> Crs::decode(ByteSpan data) {
    const std::string label = CRS_LABEL;
    size_t expect = 1 + 2 + label.size() + 4 * 32 + 32;
    if (data.size() != expect) return std::nullopt;
    if (data[0] != CRS_FORMAT) return std::nullopt;
    size_t llen = size_t(data[1]) << 8 | data[2];
    if (llen != label.size()) return std::nullopt;
    if (std::memcmp(data.data() + 3, label.data(), llen) != 0) return std::nullopt;

    size_t off = 3 + llen;
    Crs crs;
    Point* pts[4] = {&crs.tag_base, &crs.tag_offset, &crs.sim_base, &crs.sim_anchor};
    for (Point* p : pts) {
        Bytes32 enc;
        std::memcpy(enc.data(), data.data() + off, 32);
        auto dec = Point::decode(enc);
        if (!dec) return std::nullopt;
        *p = *dec;
        off += 32;
    }
    std::memcpy(crs.list_format_binding.data(), data.data() + off, 32);
    return crs;
}

Bytes32 Crs::digest() const {
    Bytes enc = encode();
    return hash32("mvno/zk/crs-digest", ByteSpan(enc.data(), enc.size()));
}

Result<std::pair<Crs, CrsTrapdoor>> crs_gen(SecurityLevel level,
                                            std::optional<uint64_t> seed) {
    if (level != SecurityLevel::bits128) return Err::UnsupportedLevel;

    Bytes material;
    material.push_back(uint8_t(level));
    if (seed) {
        append_u64_be(material, *seed);
    } else {
        Rng sys = Rng::system();
        append(material, sys.bytes(32));
    }

    Crs crs;
    ByteSpan m(material.data(), material.size());
    crs.tag_base = Point::from_hash("mvno/zk/crs/tag-base", m);
    crs.tag_offset = Point::from_hash("mvno/zk/crs/tag-offset", m);
    crs.sim_base = Point::from_hash("mvno/zk/crs/sim-base", m);
    crs.list_format_binding = hash32("mvno/zk/list-format", ByteSpan(&CRS_FORMAT, 1));

    Rng rng(ByteSpan(material.data(), material.size()));
    Rng td_rng = rng.fork("crs-trapdoor");
    CrsTrapdoor td;
    do {
        td.td = Scalar::random(td_rng);
    } while (td.td.is_zero());
    crs.sim_anchor = crs.sim_base * td.td;
    return std::make_pair(crs, td);
}

IdentityTag make_tag(const Crs& crs, const Scalar& identity) {
    Point t = crs.tag_offset + crs.tag_base * identity;
    return IdentityTag{t.encode()};
}

Status AuthorizedList::add(const IdentityTag& tag) {
    if (index_of(tag)) return Err::Duplicate;
    entries.push_back(tag);
    version++;
    return ok_status();
}

Status AuthorizedList::remove(const IdentityTag& tag) {
    auto idx = index_of(tag);
    if (!idx) return Err::UnknownTag;
    entries.erase(entries.begin() + ptrdiff_t(*idx));
    version++;
    return ok_status();
}

std::optional<size_t> AuthorizedList::index_of(const IdentityTag& tag) const {
    for (size_t i = 0; i < entries.size(); i++) {
        if (entries[i] == tag) return i;
    }
    return std::nullopt;
}

Bytes32 AuthorizedList::digest() const {
    std::vector<Bytes32> leaves;
    leaves.reserve(entries.size());
    for (const auto& e : entries) leaves.push_back(e.enc);
    Bytes32 root = merkle_root(leaves);

    Hasher h("mvno/zk/list-digest");
    h.field(ByteSpan(root.data(), 32));
    h.field_u64(version);
    h.field_u64(LIST_DIGEST_FORMAT);
    return h.final32();
}

Bytes MembershipProof::encode() const {
    Bytes out;
    out.reserve(encoded_size());
    out.push_back(PROOF_FORMAT);
    append_u32_be(out, list_version);
    append_u32_be(out, uint32_t(branches.size()));
    for (const auto& b : branches) {
        append(out, ByteSpan(b.e.bytes_be().data(), 32));
        append(out, ByteSpan(b.z1.bytes_be().data(), 32));
        append(out, ByteSpan(b.z2.bytes_be().data(), 32));
    }
    append(out, ByteSpan(e_sim.bytes_be().data(), 32));
    append(out, ByteSpan(z_sim.bytes_be().data(), 32));
    return out;
}

std::optional<MembershipProof> MembershipProof::decode(ByteSpan data) {
    if (data.size() < 9 + 64) return std::nullopt;
    if (data[0] != PROOF_FORMAT) return std::nullopt;
    MembershipProof p;
    p.list_version = uint32_t(data[1]) << 24 | uint32_t(data[2]) << 16 | uint32_t(data[3]) << 8 |
                     uint32_t(data[4]);
    uint32_t n = uint32_t(data[5]) << 24 | uint32_t(data[6]) << 16 | uint32_t(data[7]) << 8 |
                 uint32_t(data[8]);
    if (data.size() != 9 + size_t(96) * n + 64) return std::nullopt;

    auto read_scalar = [&](size_t off) -> std::optional<Scalar> {
        Bytes32 b;
        std::memcpy(b.data(), data.data() + off, 32);
        return Scalar::from_bytes_be(b);
    };

    size_t off = 9;
    p.branches.resize(n);
    for (uint32_t i = 0; i < n; i++) {
        auto e = read_scalar(off), z1 = read_scalar(off + 32), z2 = read_scalar(off + 64);
        if (!e || !z1 || !z2) return std::nullopt;
        p.branches[i] = {*e, *z1, *z2};
        off += 96;
    }
    auto es = read_scalar(off), zs = read_scalar(off + 32);
    if (!es || !zs) return std::nullopt;
    p.e_sim = *es;
    p.z_sim = *zs;
    return p;
}

namespace {

Scalar fs_challenge(const Crs& crs, const CommitmentKey& ck, const Commitment& c,
                    const AuthorizedList& list, ByteSpan context,
                    const std::vector<std::pair<Bytes32, Bytes32>>& first_moves,
                    const Bytes32& sim_move) {
    Hasher h("mvno/zk/fs-challenge");
    auto crs_d = crs.digest();
    auto ck_d = ck.digest();
    auto c_e = c.bytes();
    auto list_d = list.digest();
    h.field(ByteSpan(crs_d.data(), 32));
    h.field(ByteSpan(ck_d.data(), 32));
    h.field(ByteSpan(c_e.data(), 32));
    h.field(ByteSpan(list_d.data(), 32));
    h.field(context);
    for (const auto& [a, b] : first_moves) {
        h.field(ByteSpan(a.data(), 32));
        h.field(ByteSpan(b.data(), 32));
    }
    h.field(ByteSpan(sim_move.data(), 32));
    return Scalar::reduce64(h.final64());
}

// Shifted tag points T_j - tag_offset; each branch proves the committed
// scalar's multiple of tag_base equals one of these.
std::optional<std::vector<Point>> shifted_tags(const Crs& crs, const AuthorizedList& list) {
    std::vector<Point> out;
    out.reserve(list.entries.size());
    for (const auto& t : list.entries) {
        auto p = Point::decode(t.enc);
        if (!p) return std::nullopt;
        out.push_back(*p - crs.tag_offset);
    }
    return out;
}

struct BranchEngine {
    const Crs& crs;
    const CommitmentKey& ck;
    const Point& c;
    bool use_tables;
    std::optional<MulTable> t_gm, t_gr, t_u, t_c;

    BranchEngine(const Crs& crs_, const CommitmentKey& ck_, const Point& c_, size_t n)
        : crs(crs_), ck(ck_), c(c_), use_tables(n >= TABLE_THRESHOLD) {
        if (use_tables) {
            t_gm.emplace(ck.g_m);
            t_gr.emplace(ck.g_r);
            t_u.emplace(crs.tag_base);
            t_c.emplace(c);
        }
    }

    // A = z1*Gm + z2*Gr - e*C
    Point recompute_a(const Scalar& e, const Scalar& z1, const Scalar& z2) const {
        if (use_tables) {
            Point acc;
            t_gm->mul_accum(z1, acc);
            t_gr->mul_accum(z2, acc);
            t_c->mul_accum(-e, acc);
            return acc;
        }
        return triple_mul(z1, ck.g_m, z2, ck.g_r, -e, c);
    }

    // B = z1*U - e*T'
    Point recompute_b(const Scalar& e, const Scalar& z1, const Point& shifted_tag) const {
        Point ut = use_tables ? t_u->mul(z1) : crs.tag_base * z1;
        return ut - shifted_tag * e;
    }
};

}  // namespace

namespace detail {

MembershipProof prove_at_index(const Crs& crs, const CommitmentKey& ck, const Scalar& identity,
                               const Scalar& r, size_t index, const AuthorizedList& list,
                               ByteSpan context, Rng& rng) {
    auto tags = shifted_tags(crs, list);
    size_t n = list.entries.size();
    Commitment c = commit(ck, identity, r);
    BranchEngine eng(crs, ck, c.value, n);

    MembershipProof proof;
    proof.list_version = list.version;
    proof.branches.resize(n);

    std::vector<std::pair<Bytes32, Bytes32>> first_moves(n);

    // simulate every branch except the real one
    for (size_t j = 0; j < n; j++) {
        if (j == index) continue;
        auto& br = proof.branches[j];
        br.e = Scalar::random(rng);
        br.z1 = Scalar::random(rng);
        br.z2 = Scalar::random(rng);
        first_moves[j] = {eng.recompute_a(br.e, br.z1, br.z2).encode(),
                          eng.recompute_b(br.e, br.z1, (*tags)[j]).encode()};
    }

    // real branch: honest first moves
    Scalar alpha = Scalar::random(rng), beta = Scalar::random(rng);
    first_moves[index] = {double_mul(alpha, ck.g_m, beta, ck.g_r).encode(),
                          (crs.tag_base * alpha).encode()};

    // trapdoor branch: simulated
    proof.e_sim = Scalar::random(rng);
    proof.z_sim = Scalar::random(rng);
    Bytes32 sim_move =
        (crs.sim_base * proof.z_sim - crs.sim_anchor * proof.e_sim).encode();

    Scalar challenge = fs_challenge(crs, ck, c, list, context, first_moves, sim_move);

    Scalar e_real = challenge - proof.e_sim;
    for (size_t j = 0; j < n; j++) {
        if (j != index) e_real = e_real - proof.branches[j].e;
    }
    proof.branches[index].e = e_real;
    proof.branches[index].z1 = alpha + e_real * identity;
    proof.branches[index].z2 = beta + e_real * r;
    return proof;
}

}  // namespace detail

Result<MembershipProof> prove_membership(const Crs& crs, const CommitmentKey& ck,
                                         const Scalar& identity, const Scalar& r,
                                         const AuthorizedList& list, ByteSpan context,
                                         Rng& rng) {
    auto idx = list.index_of(make_tag(crs, identity));
    if (!idx) return Err::NotInList;
    return detail::prove_at_index(crs, ck, identity, r, *idx, list, context, rng);
}

bool verify_membership(const Crs& crs, const CommitmentKey& ck, const Commitment& c,
                       const AuthorizedList& list, const MembershipProof& proof,
                       ByteSpan context) {
    size_t n = list.entries.size();
    if (proof.branches.size() != n) return false;
    if (proof.list_version != list.version) return false;
    auto tags = shifted_tags(crs, list);
    if (!tags) return false;

    BranchEngine eng(crs, ck, c.value, n);
    std::vector<std::pair<Bytes32, Bytes32>> first_moves(n);
    Scalar sum;
    for (size_t j = 0; j < n; j++) {
        const auto& br = proof.branches[j];
        first_moves[j] = {eng.recompute_a(br.e, br.z1, br.z2).encode(),
                          eng.recompute_b(br.e, br.z1, (*tags)[j]).encode()};
        sum = sum + br.e;
    }
    Bytes32 sim_move = (crs.sim_base * proof.z_sim - crs.sim_anchor * proof.e_sim).encode();
    sum = sum + proof.e_sim;

    Scalar challenge = fs_challenge(crs, ck, c, list, context, first_moves, sim_move);
    return sum == challenge;
}

Result<MembershipProof> simulate_proof(const Crs& crs, const CrsTrapdoor& td,
                                       const CommitmentKey& ck, const Commitment& c,
                                       const AuthorizedList& list, ByteSpan context, Rng& rng) {
    if (!(crs.sim_base * td.td == crs.sim_anchor)) return Err::TrapdoorMismatch;

    auto tags = shifted_tags(crs, list);
    if (!tags) return Err::BadProof;
    size_t n = list.entries.size();
    BranchEngine eng(crs, ck, c.value, n);

    MembershipProof proof;
    proof.list_version = list.version;
    proof.branches.resize(n);
    std::vector<std::pair<Bytes32, Bytes32>> first_moves(n);

    // simulate every list branch
    for (size_t j = 0; j < n; j++) {
        auto& br = proof.branches[j];
        br.e = Scalar::random(rng);
        br.z1 = Scalar::random(rng);
        br.z2 = Scalar::random(rng);
        first_moves[j] = {eng.recompute_a(br.e, br.z1, br.z2).encode(),
                          eng.recompute_b(br.e, br.z1, (*tags)[j]).encode()};
    }

    // honest Schnorr run on the trapdoor branch
    Scalar k = Scalar::random(rng);
    Bytes32 sim_move = (crs.sim_base * k).encode();

    Scalar challenge = fs_challenge(crs, ck, c, list, context, first_moves, sim_move);
    Scalar e_sim = challenge;
    for (const auto& br : proof.branches) e_sim = e_sim - br.e;
    proof.e_sim = e_sim;
    proof.z_sim = k + e_sim * td.td;
    return proof;
}

}  // namespace mvno::zk
