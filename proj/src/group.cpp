#include "mvno/group.hpp"

#include <sodium.h>

#include <bit>

#include "detail/curve.hpp"
#include "mvno/hash.hpp"

namespace mvno {

namespace {

// group order l, little-endian
constexpr uint8_t L_LE[32] = {0xed, 0xd3, 0xf5, 0x5c, 0x1a, 0x63, 0x12, 0x58, 0xd6, 0x9c, 0xf7,
                              0xa2, 0xde, 0xf9, 0xde, 0x14, 0,    0,    0,    0,    0,    0,
                              0,    0,    0,    0,    0,    0,    0,    0,    0,    0x10};

bool is_canonical_scalar(const Bytes32& b) {
    for (int i = 31; i >= 0; i--) {
        if (b[i] < L_LE[i]) return true;
        if (b[i] > L_LE[i]) return false;
    }
    return false;  // == l
}

inline const curve::GeP3& as_ge(const detail::PointRepr& r) {
    static_assert(sizeof(curve::GeP3) == sizeof(detail::PointRepr));
    return *reinterpret_cast<const curve::GeP3*>(&r);
}

inline curve::GeP3& as_ge(detail::PointRepr& r) {
    return *reinterpret_cast<curve::GeP3*>(&r);
}

}  // namespace

Scalar Scalar::from_u64(uint64_t v) {
    Scalar s;
    for (int i = 0; i < 8; i++) s.b_[i] = uint8_t(v >> (8 * i));
    return s;
}

Scalar Scalar::random(Rng& rng) {
    Bytes64 wide;
    rng.fill(wide.data(), wide.size());
    return reduce64(wide);
}

Scalar Scalar::reduce64(const Bytes64& wide) {
    ensure_sodium_init();
    Bytes64 tmp = wide;
    Scalar s;
    crypto_core_ristretto255_scalar_reduce(s.b_.data(), tmp.data());
    return s;
}

std::optional<Scalar> Scalar::from_bytes_le(const Bytes32& b) {
    if (!is_canonical_scalar(b)) return std::nullopt;
    Scalar s;
    s.b_ = b;
    return s;
}

std::optional<Scalar> Scalar::from_bytes_be(const Bytes32& b) {
    Bytes32 le;
    for (int i = 0; i < 32; i++) le[i] = b[31 - i];
    return from_bytes_le(le);
}

Bytes32 Scalar::bytes_be() const {
    Bytes32 be;
    for (int i = 0; i < 32; i++) be[i] = b_[31 - i];
    return be;
}

Scalar Scalar::operator+(const Scalar& o) const {
    ensure_sodium_init();
    Scalar r;
    crypto_core_ristretto255_scalar_add(r.b_.data(), b_.data(), o.b_.data());
    return r;
}

Scalar Scalar::operator-(const Scalar& o) const {
    ensure_sodium_init();
    Scalar r;
    crypto_core_ristretto255_scalar_sub(r.b_.data(), b_.data(), o.b_.data());
    return r;
}

Scalar Scalar::operator*(const Scalar& o) const {
    ensure_sodium_init();
    Scalar r;
    crypto_core_ristretto255_scalar_mul(r.b_.data(), b_.data(), o.b_.data());
    return r;
}

Scalar Scalar::operator-() const {
    ensure_sodium_init();
    Scalar r;
    crypto_core_ristretto255_scalar_negate(r.b_.data(), b_.data());
    return r;
}

std::optional<Scalar> Scalar::invert() const {
    ensure_sodium_init();
    if (is_zero()) return std::nullopt;
    Scalar r;
    crypto_core_ristretto255_scalar_invert(r.b_.data(), b_.data());
    return r;
}

bool Scalar::is_zero() const {
    uint8_t acc = 0;
    for (auto b : b_) acc |= b;
    return acc == 0;
}

Scalar hash_to_scalar(const std::string& domain, ByteSpan data) {
    return Scalar::reduce64(hash64(domain, data));
}

Point::Point() { as_ge(repr) = curve::ge_identity(); }

const Point& Point::base() {
    static const Point b = [] {
        // canonical ristretto255 basepoint encoding
        const Bytes32 enc = {0xe2, 0xf2, 0xae, 0x0a, 0x6a, 0xbc, 0x4e, 0x71, 0xa8, 0x84, 0xa9,
                             0x61, 0xc5, 0x00, 0x51, 0x5f, 0x58, 0xe3, 0x0b, 0x6a, 0xa5, 0x82,
                             0xdd, 0x8d, 0xb6, 0xa6, 0x59, 0x45, 0xe0, 0x8d, 0x2d, 0x76};
        auto p = Point::decode(enc);
        return *p;
    }();
    return b;
}

std::optional<Point> Point::decode(const Bytes32& b) {
    Point p;
    if (!curve::ristretto_decode(as_ge(p.repr), b.data())) return std::nullopt;
    return p;
}

Point Point::from_hash(const std::string& domain, ByteSpan data) {
    ensure_sodium_init();
    Bytes64 wide = hash64(domain, data);
    Bytes32 enc;
    crypto_core_ristretto255_from_hash(enc.data(), wide.data());
    auto p = decode(enc);
    return *p;  // from_hash always yields a valid encoding
}

Bytes32 Point::encode() const {
    Bytes32 out;
    curve::ristretto_encode(out.data(), as_ge(repr));
    return out;
}

Point Point::operator+(const Point& o) const {
    Point r;
    as_ge(r.repr) = curve::ge_add(as_ge(repr), as_ge(o.repr));
    return r;
}

Point Point::operator-(const Point& o) const {
    Point r;
    as_ge(r.repr) = curve::ge_sub(as_ge(repr), as_ge(o.repr));
    return r;
}

Point Point::operator-() const {
    Point r;
    as_ge(r.repr) = curve::ge_neg(as_ge(repr));
    return r;
}

Point Point::operator*(const Scalar& s) const {
    Point r;
    as_ge(r.repr) = curve::ge_scalar_mul(s.bytes_le().data(), as_ge(repr));
    return r;
}

bool Point::operator==(const Point& o) const {
    return curve::ge_ristretto_eq(as_ge(repr), as_ge(o.repr));
}

bool Point::is_identity() const { return curve::ge_is_identity(as_ge(repr)); }

Point double_mul(const Scalar& a, const Point& P, const Scalar& b, const Point& Q) {
    curve::NibbleTable tp(as_ge(P.repr)), tq(as_ge(Q.repr));
    const uint8_t* sc[2] = {a.bytes_le().data(), b.bytes_le().data()};
    const curve::NibbleTable* ts[2] = {&tp, &tq};
    Point r;
    as_ge(r.repr) = curve::ge_straus(sc, ts, 2);
    return r;
}

Point triple_mul(const Scalar& a, const Point& P, const Scalar& b, const Point& Q,
                 const Scalar& c, const Point& R) {
    curve::NibbleTable tp(as_ge(P.repr)), tq(as_ge(Q.repr)), tr(as_ge(R.repr));
    const uint8_t* sc[3] = {a.bytes_le().data(), b.bytes_le().data(), c.bytes_le().data()};
    const curve::NibbleTable* ts[3] = {&tp, &tq, &tr};
    Point r;
    as_ge(r.repr) = curve::ge_straus(sc, ts, 3);
    return r;
}

struct MulTable::Impl {
    curve::FixedBaseTable table;
    explicit Impl(const curve::GeP3& p) : table(p) {}
};

MulTable::MulTable(const Point& base) : impl_(std::make_unique<Impl>(as_ge(base.repr))) {}
MulTable::~MulTable() = default;
MulTable::MulTable(MulTable&&) noexcept = default;

Point MulTable::mul(const Scalar& s) const {
    Point acc;
    impl_->table.mul_accum(s.bytes_le().data(), as_ge(acc.repr));
    return acc;
}

void MulTable::mul_accum(const Scalar& s, Point& acc) const {
    impl_->table.mul_accum(s.bytes_le().data(), as_ge(acc.repr));
}

}  // namespace mvno
