#pragma once

#include <memory>
#include <optional>

#include "mvno/common.hpp"
#include "mvno/rng.hpp"

namespace mvno {

// Prime-order group: ristretto255. Point arithmetic runs on an internal
// extended-coordinate Edwards implementation (variable time; side-channel
// hardening is out of scope), cross-checked against libsodium in the test
// suite. Scalar arithmetic mod the group order l = 2^252 + 27742...3493
// delegates to libsodium.

class Scalar {
  public:
    Scalar() = default;  // zero

    static Scalar from_u64(uint64_t v);
    static Scalar random(Rng& rng);
    // Reduces 64 uniform bytes mod l.
    static Scalar reduce64(const Bytes64& wide);
    // Canonical little-endian load; rejects encodings >= l.
    static std::optional<Scalar> from_bytes_le(const Bytes32& b);
    // Wire form is fixed-width big-endian.
    static std::optional<Scalar> from_bytes_be(const Bytes32& b);

    const Bytes32& bytes_le() const { return b_; }
    Bytes32 bytes_be() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator-() const;
    // Multiplicative inverse; zero has none.
    std::optional<Scalar> invert() const;

    bool operator==(const Scalar& o) const { return b_ == o.b_; }
    bool is_zero() const;

  private:
    Bytes32 b_{};  // little-endian, always reduced
};

// Maps a byte string to a scalar via BLAKE2b-512 then reduction.
Scalar hash_to_scalar(const std::string& domain, ByteSpan data);

namespace detail {
// Extended Edwards coordinates, 51-bit limbs. Layout-compatible with the
// internal curve routines; opaque to callers.
struct PointRepr {
    uint64_t X[5], Y[5], Z[5], T[5];
};
}  // namespace detail

class Point {
  public:
    Point();  // identity

    static const Point& base();  // ristretto255 basepoint
    static std::optional<Point> decode(const Bytes32& b);
    // Deterministic hash-to-group (via the canonical one-way map).
    static Point from_hash(const std::string& domain, ByteSpan data);

    Bytes32 encode() const;

    Point operator+(const Point& o) const;
    Point operator-(const Point& o) const;
    Point operator-() const;
    Point operator*(const Scalar& s) const;

    bool operator==(const Point& o) const;
    bool is_identity() const;

    detail::PointRepr repr;
};

// a*P + b*Q with shared doublings.
Point double_mul(const Scalar& a, const Point& P, const Scalar& b, const Point& Q);
// a*P + b*Q + c*R with shared doublings.
Point triple_mul(const Scalar& a, const Point& P, const Scalar& b, const Point& Q,
                 const Scalar& c, const Point& R);

// Fixed-base precomputation. Worth building when one base is multiplied by
// many scalars (the membership proof touches each base once per list entry).
class MulTable {
  public:
    explicit MulTable(const Point& base);
    ~MulTable();
    MulTable(MulTable&&) noexcept;
    MulTable(const MulTable&) = delete;
    MulTable& operator=(const MulTable&) = delete;

    Point mul(const Scalar& s) const;
    // acc += s * base, avoiding intermediate conversions.
    void mul_accum(const Scalar& s, Point& acc) const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace mvno
