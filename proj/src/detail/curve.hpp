#pragma once

// Internal arithmetic for ristretto255: GF(2^255-19) with 51-bit limbs and
// extended twisted Edwards coordinates (a = -1). All routines are variable
// time; the library's threat model excludes side channels. Correctness is
// pinned against libsodium in tests/test_group.cpp.

#include <cstdint>
#include <cstring>
#include <vector>

namespace mvno::curve {

using u64 = uint64_t;
using u128 = unsigned __int128;

constexpr u64 MASK51 = (u64(1) << 51) - 1;

struct Fe {
    u64 v[5];
};

inline Fe fe_zero() { return {{0, 0, 0, 0, 0}}; }
inline Fe fe_one() { return {{1, 0, 0, 0, 0}}; }

constexpr Fe ED_D = {{0x34dca135978a3, 0x1a8283b156ebd, 0x5e7a26001c029, 0x739c663a03cbb,
                      0x52036cee2b6ff}};
constexpr Fe ED_D2 = {{0x69b9426b2f159, 0x35050762add7a, 0x3cf44c0038052, 0x6738cc7407977,
                       0x2406d9dc56dff}};
constexpr Fe SQRT_M1 = {{0x61b274a0ea0b0, 0xd5a5fc8f189d, 0x7ef5e9cbd0c60, 0x78595a6804c9e,
                         0x2b8324804fc1d}};
constexpr Fe SQRT_AD_MINUS_ONE = {{0x7f6a0497b2e1b, 0x1836f0a97afd2, 0x7d747f6be7638,
                                   0x456079e7e6498, 0x376931bf2b834}};
constexpr Fe INVSQRT_A_MINUS_D = {{0xfdaa805d40ea, 0x2eb482e57d339, 0x7610274bc58,
                                   0x6510b613dc8ff, 0x786c8905cfaff}};
constexpr Fe ONE_MINUS_D_SQ = {{0x409c1945fc176, 0x719abc6a1fc4f, 0x1c37f90b20684,
                                0x6bccca55eedf, 0x29072a8b2b3e}};
constexpr Fe D_MINUS_ONE_SQ = {{0x55aaa44ed4d20, 0x59603c3332635, 0x26d3baf4a7928,
                                0x120a66e6997a9, 0x5968b37af66c2}};

inline Fe fe_add(const Fe& f, const Fe& g) {
    Fe h;
    for (int i = 0; i < 5; i++) h.v[i] = f.v[i] + g.v[i];
    return h;
}

// f - g, adding 2p in limb form to keep limbs positive.
inline Fe fe_sub(const Fe& f, const Fe& g) {
    Fe h;
    h.v[0] = (f.v[0] + ((u64(1) << 52) - 38)) - g.v[0];
    h.v[1] = (f.v[1] + ((u64(1) << 52) - 2)) - g.v[1];
    h.v[2] = (f.v[2] + ((u64(1) << 52) - 2)) - g.v[2];
    h.v[3] = (f.v[3] + ((u64(1) << 52) - 2)) - g.v[3];
    h.v[4] = (f.v[4] + ((u64(1) << 52) - 2)) - g.v[4];
    // one carry pass keeps limbs bounded for subsequent muls
    u64 c;
    c = h.v[0] >> 51; h.v[0] &= MASK51; h.v[1] += c;
    c = h.v[1] >> 51; h.v[1] &= MASK51; h.v[2] += c;
    c = h.v[2] >> 51; h.v[2] &= MASK51; h.v[3] += c;
    c = h.v[3] >> 51; h.v[3] &= MASK51; h.v[4] += c;
    c = h.v[4] >> 51; h.v[4] &= MASK51; h.v[0] += c * 19;
    return h;
}

inline Fe fe_neg(const Fe& f) { return fe_sub(fe_zero(), f); }

inline Fe fe_mul(const Fe& f, const Fe& g) {
    u128 t0, t1, t2, t3, t4;
    u64 g19_1 = 19 * g.v[1], g19_2 = 19 * g.v[2], g19_3 = 19 * g.v[3], g19_4 = 19 * g.v[4];

    t0 = (u128)f.v[0] * g.v[0] + (u128)f.v[1] * g19_4 + (u128)f.v[2] * g19_3 +
         (u128)f.v[3] * g19_2 + (u128)f.v[4] * g19_1;
    t1 = (u128)f.v[0] * g.v[1] + (u128)f.v[1] * g.v[0] + (u128)f.v[2] * g19_4 +
         (u128)f.v[3] * g19_3 + (u128)f.v[4] * g19_2;
    t2 = (u128)f.v[0] * g.v[2] + (u128)f.v[1] * g.v[1] + (u128)f.v[2] * g.v[0] +
         (u128)f.v[3] * g19_4 + (u128)f.v[4] * g19_3;
    t3 = (u128)f.v[0] * g.v[3] + (u128)f.v[1] * g.v[2] + (u128)f.v[2] * g.v[1] +
         (u128)f.v[3] * g.v[0] + (u128)f.v[4] * g19_4;
    t4 = (u128)f.v[0] * g.v[4] + (u128)f.v[1] * g.v[3] + (u128)f.v[2] * g.v[2] +
         (u128)f.v[3] * g.v[1] + (u128)f.v[4] * g.v[0];

    Fe h;
    u64 c;
    h.v[0] = (u64)t0 & MASK51; c = (u64)(t0 >> 51);
    t1 += c; h.v[1] = (u64)t1 & MASK51; c = (u64)(t1 >> 51);
    t2 += c; h.v[2] = (u64)t2 & MASK51; c = (u64)(t2 >> 51);
    t3 += c; h.v[3] = (u64)t3 & MASK51; c = (u64)(t3 >> 51);
    t4 += c; h.v[4] = (u64)t4 & MASK51; c = (u64)(t4 >> 51);
    h.v[0] += c * 19;
    c = h.v[0] >> 51; h.v[0] &= MASK51; h.v[1] += c;
    return h;
}

inline Fe fe_sq(const Fe& f) {
    u64 f0 = f.v[0], f1 = f.v[1], f2 = f.v[2], f3 = f.v[3], f4 = f.v[4];
    u64 f0_2 = f0 * 2, f1_2 = f1 * 2;
    u64 f1_38 = f1 * 38, f2_38 = f2 * 38, f3_38 = f3 * 38, f4_19 = f4 * 19, f3_19 = f3 * 19;

    u128 t0 = (u128)f0 * f0 + (u128)f1_38 * f4 + (u128)f2_38 * f3;
    u128 t1 = (u128)f0_2 * f1 + (u128)f2_38 * f4 + (u128)f3_19 * f3;
    u128 t2 = (u128)f0_2 * f2 + (u128)f1 * f1 + (u128)f3_38 * f4;
    u128 t3 = (u128)f0_2 * f3 + (u128)f1_2 * f2 + (u128)f4_19 * f4;
    u128 t4 = (u128)f0_2 * f4 + (u128)f1_2 * f3 + (u128)f2 * f2;

    Fe h;
    u64 c;
    h.v[0] = (u64)t0 & MASK51; c = (u64)(t0 >> 51);
    t1 += c; h.v[1] = (u64)t1 & MASK51; c = (u64)(t1 >> 51);
    t2 += c; h.v[2] = (u64)t2 & MASK51; c = (u64)(t2 >> 51);
    t3 += c; h.v[3] = (u64)t3 & MASK51; c = (u64)(t3 >> 51);
    t4 += c; h.v[4] = (u64)t4 & MASK51; c = (u64)(t4 >> 51);
    h.v[0] += c * 19;
    c = h.v[0] >> 51; h.v[0] &= MASK51; h.v[1] += c;
    return h;
}

inline Fe fe_sq2(const Fe& f) {  // 2 * f^2
    return fe_add(fe_sq(f), fe_sq(f));
}

inline void fe_tobytes(uint8_t s[32], const Fe& h) {
    u64 t[5];
    std::memcpy(t, h.v, sizeof t);
    u64 c;
    for (int pass = 0; pass < 2; pass++) {
        c = t[0] >> 51; t[0] &= MASK51; t[1] += c;
        c = t[1] >> 51; t[1] &= MASK51; t[2] += c;
        c = t[2] >> 51; t[2] &= MASK51; t[3] += c;
        c = t[3] >> 51; t[3] &= MASK51; t[4] += c;
        c = t[4] >> 51; t[4] &= MASK51; t[0] += c * 19;
    }
    // canonical reduction: add 19, propagate, drop bit 255, i.e. subtract p iff t >= p
    u64 q = (t[0] + 19) >> 51;
    q = (t[1] + q) >> 51;
    q = (t[2] + q) >> 51;
    q = (t[3] + q) >> 51;
    q = (t[4] + q) >> 51;
    t[0] += 19 * q;
    c = t[0] >> 51; t[0] &= MASK51; t[1] += c;
    c = t[1] >> 51; t[1] &= MASK51; t[2] += c;
    c = t[2] >> 51; t[2] &= MASK51; t[3] += c;
    c = t[3] >> 51; t[3] &= MASK51; t[4] += c;
    t[4] &= MASK51;

    u64 lo0 = t[0] | (t[1] << 51);
    u64 lo1 = (t[1] >> 13) | (t[2] << 38);
    u64 lo2 = (t[2] >> 26) | (t[3] << 25);
    u64 lo3 = (t[3] >> 39) | (t[4] << 12);
    std::memcpy(s, &lo0, 8);
    std::memcpy(s + 8, &lo1, 8);
    std::memcpy(s + 16, &lo2, 8);
    std::memcpy(s + 24, &lo3, 8);
}

inline Fe fe_frombytes(const uint8_t s[32]) {
    u64 w0, w1, w2, w3;
    std::memcpy(&w0, s, 8);
    std::memcpy(&w1, s + 8, 8);
    std::memcpy(&w2, s + 16, 8);
    std::memcpy(&w3, s + 24, 8);
    Fe h;
    h.v[0] = w0 & MASK51;
    h.v[1] = ((w0 >> 51) | (w1 << 13)) & MASK51;
    h.v[2] = ((w1 >> 38) | (w2 << 26)) & MASK51;
    h.v[3] = ((w2 >> 25) | (w3 << 39)) & MASK51;
    h.v[4] = (w3 >> 12) & MASK51;
    return h;
}

inline bool fe_eq(const Fe& f, const Fe& g) {
    uint8_t a[32], b[32];
    fe_tobytes(a, f);
    fe_tobytes(b, g);
    return std::memcmp(a, b, 32) == 0;
}

inline bool fe_is_zero(const Fe& f) { return fe_eq(f, fe_zero()); }

inline bool fe_is_negative(const Fe& f) {
    uint8_t b[32];
    fe_tobytes(b, f);
    return (b[0] & 1) != 0;
}

inline Fe fe_abs(const Fe& f) { return fe_is_negative(f) ? fe_neg(f) : f; }

inline Fe fe_invert(const Fe& z) {
    Fe t0, t1, t2, t3;
    t0 = fe_sq(z);
    t1 = fe_sq(t0);
    t1 = fe_sq(t1);
    t1 = fe_mul(z, t1);
    t0 = fe_mul(t0, t1);
    t2 = fe_sq(t0);
    t1 = fe_mul(t1, t2);
    t2 = fe_sq(t1);
    for (int i = 1; i < 5; i++) t2 = fe_sq(t2);
    t1 = fe_mul(t2, t1);
    t2 = fe_sq(t1);
    for (int i = 1; i < 10; i++) t2 = fe_sq(t2);
    t2 = fe_mul(t2, t1);
    t3 = fe_sq(t2);
    for (int i = 1; i < 20; i++) t3 = fe_sq(t3);
    t2 = fe_mul(t3, t2);
    t2 = fe_sq(t2);
    for (int i = 1; i < 10; i++) t2 = fe_sq(t2);
    t1 = fe_mul(t2, t1);
    t2 = fe_sq(t1);
    for (int i = 1; i < 50; i++) t2 = fe_sq(t2);
    t2 = fe_mul(t2, t1);
    t3 = fe_sq(t2);
    for (int i = 1; i < 100; i++) t3 = fe_sq(t3);
    t2 = fe_mul(t3, t2);
    t2 = fe_sq(t2);
    for (int i = 1; i < 50; i++) t2 = fe_sq(t2);
    t1 = fe_mul(t2, t1);
    t1 = fe_sq(t1);
    for (int i = 1; i < 5; i++) t1 = fe_sq(t1);
    return fe_mul(t1, t0);
}

inline Fe fe_pow22523(const Fe& z) {  // z^((p-5)/8)
    Fe t0, t1, t2;
    t0 = fe_sq(z);
    t1 = fe_sq(t0);
    t1 = fe_sq(t1);
    t1 = fe_mul(z, t1);
    t0 = fe_mul(t0, t1);
    t0 = fe_sq(t0);
    t0 = fe_mul(t1, t0);
    t1 = fe_sq(t0);
    for (int i = 1; i < 5; i++) t1 = fe_sq(t1);
    t0 = fe_mul(t1, t0);
    t1 = fe_sq(t0);
    for (int i = 1; i < 10; i++) t1 = fe_sq(t1);
    t1 = fe_mul(t1, t0);
    t2 = fe_sq(t1);
    for (int i = 1; i < 20; i++) t2 = fe_sq(t2);
    t1 = fe_mul(t2, t1);
    t1 = fe_sq(t1);
    for (int i = 1; i < 10; i++) t1 = fe_sq(t1);
    t0 = fe_mul(t1, t0);
    t1 = fe_sq(t0);
    for (int i = 1; i < 50; i++) t1 = fe_sq(t1);
    t1 = fe_mul(t1, t0);
    t2 = fe_sq(t1);
    for (int i = 1; i < 100; i++) t2 = fe_sq(t2);
    t1 = fe_mul(t2, t1);
    t1 = fe_sq(t1);
    for (int i = 1; i < 50; i++) t1 = fe_sq(t1);
    t0 = fe_mul(t1, t0);
    t0 = fe_sq(t0);
    t0 = fe_sq(t0);
    return fe_mul(t0, z);
}

// r = sqrt(u/v) when u/v is square, else sqrt(i*u/v); returns whether u/v was
// square. r is always the nonnegative root.
inline bool fe_sqrt_ratio_m1(Fe& r, const Fe& u, const Fe& v) {
    Fe v3 = fe_mul(fe_sq(v), v);
    Fe v7 = fe_mul(fe_sq(v3), v);
    r = fe_mul(fe_mul(u, v3), fe_pow22523(fe_mul(u, v7)));
    Fe check = fe_mul(v, fe_sq(r));

    bool correct_sign = fe_eq(check, u);
    bool flipped_sign = fe_eq(check, fe_neg(u));
    bool flipped_sign_i = fe_eq(check, fe_mul(fe_neg(u), SQRT_M1));

    if (flipped_sign || flipped_sign_i) r = fe_mul(r, SQRT_M1);
    r = fe_abs(r);
    return correct_sign || flipped_sign;
}

// Extended coordinates: x = X/Z, y = Y/Z, xy = T/Z.
struct GeP3 {
    Fe X, Y, Z, T;
};

struct GeCached {
    Fe YplusX, YminusX, Z, T2d;
};

struct GeP1P1 {
    Fe X, Y, Z, T;
};

inline GeP3 ge_identity() { return {fe_zero(), fe_one(), fe_one(), fe_zero()}; }

inline bool ge_is_identity(const GeP3& p) { return fe_is_zero(p.X) && fe_eq(p.Y, p.Z); }

inline GeCached ge_to_cached(const GeP3& p) {
    return {fe_add(p.Y, p.X), fe_sub(p.Y, p.X), p.Z, fe_mul(p.T, ED_D2)};
}

inline GeP3 ge_p1p1_to_p3(const GeP1P1& p) {
    return {fe_mul(p.X, p.T), fe_mul(p.Y, p.Z), fe_mul(p.Z, p.T), fe_mul(p.X, p.Y)};
}

inline GeP1P1 ge_add_p1p1(const GeP3& p, const GeCached& q) {
    GeP1P1 r;
    Fe a = fe_mul(fe_add(p.Y, p.X), q.YplusX);
    Fe b = fe_mul(fe_sub(p.Y, p.X), q.YminusX);
    Fe c = fe_mul(q.T2d, p.T);
    Fe d = fe_add(fe_mul(p.Z, q.Z), fe_mul(p.Z, q.Z));
    r.X = fe_sub(a, b);
    r.Y = fe_add(a, b);
    r.Z = fe_add(d, c);
    r.T = fe_sub(d, c);
    return r;
}

inline GeP1P1 ge_sub_p1p1(const GeP3& p, const GeCached& q) {
    GeP1P1 r;
    Fe a = fe_mul(fe_add(p.Y, p.X), q.YminusX);
    Fe b = fe_mul(fe_sub(p.Y, p.X), q.YplusX);
    Fe c = fe_mul(q.T2d, p.T);
    Fe d = fe_add(fe_mul(p.Z, q.Z), fe_mul(p.Z, q.Z));
    r.X = fe_sub(a, b);
    r.Y = fe_add(a, b);
    r.Z = fe_sub(d, c);
    r.T = fe_add(d, c);
    return r;
}

inline GeP3 ge_add(const GeP3& p, const GeP3& q) {
    return ge_p1p1_to_p3(ge_add_p1p1(p, ge_to_cached(q)));
}

inline GeP3 ge_sub(const GeP3& p, const GeP3& q) {
    return ge_p1p1_to_p3(ge_sub_p1p1(p, ge_to_cached(q)));
}

inline GeP1P1 ge_dbl_p1p1(const GeP3& p) {
    GeP1P1 r;
    Fe xx = fe_sq(p.X);
    Fe yy = fe_sq(p.Y);
    Fe zz2 = fe_sq2(p.Z);
    Fe xy2 = fe_sq(fe_add(p.X, p.Y));
    r.Y = fe_add(yy, xx);
    r.Z = fe_sub(yy, xx);
    r.X = fe_sub(xy2, r.Y);
    r.T = fe_sub(zz2, r.Z);
    return r;
}

inline GeP3 ge_dbl(const GeP3& p) { return ge_p1p1_to_p3(ge_dbl_p1p1(p)); }

inline GeP3 ge_neg(const GeP3& p) { return {fe_neg(p.X), p.Y, p.Z, fe_neg(p.T)}; }

// ristretto255 equality: X1Y2 == Y1X2 or Y1Y2 == X1X2.
inline bool ge_ristretto_eq(const GeP3& p, const GeP3& q) {
    return fe_eq(fe_mul(p.X, q.Y), fe_mul(p.Y, q.X)) ||
           fe_eq(fe_mul(p.Y, q.Y), fe_mul(p.X, q.X));
}

inline void ristretto_encode(uint8_t out[32], const GeP3& p) {
    Fe u1 = fe_mul(fe_add(p.Z, p.Y), fe_sub(p.Z, p.Y));
    Fe u2 = fe_mul(p.X, p.Y);
    Fe invsqrt;
    fe_sqrt_ratio_m1(invsqrt, fe_one(), fe_mul(u1, fe_sq(u2)));
    Fe den1 = fe_mul(invsqrt, u1);
    Fe den2 = fe_mul(invsqrt, u2);
    Fe z_inv = fe_mul(fe_mul(den1, den2), p.T);

    Fe ix = fe_mul(p.X, SQRT_M1);
    Fe iy = fe_mul(p.Y, SQRT_M1);
    Fe enchanted = fe_mul(den1, INVSQRT_A_MINUS_D);

    bool rotate = fe_is_negative(fe_mul(p.T, z_inv));
    Fe x = rotate ? iy : p.X;
    Fe y = rotate ? ix : p.Y;
    Fe den_inv = rotate ? enchanted : den2;

    if (fe_is_negative(fe_mul(x, z_inv))) y = fe_neg(y);
    Fe s = fe_abs(fe_mul(den_inv, fe_sub(p.Z, y)));
    fe_tobytes(out, s);
}

inline bool ristretto_decode(GeP3& out, const uint8_t in[32]) {
    Fe s = fe_frombytes(in);
    uint8_t check[32];
    fe_tobytes(check, s);
    if (std::memcmp(check, in, 32) != 0) return false;  // non-canonical field element
    if (fe_is_negative(s)) return false;

    Fe ss = fe_sq(s);
    Fe u1 = fe_sub(fe_one(), ss);
    Fe u2 = fe_add(fe_one(), ss);
    Fe u2_sqr = fe_sq(u2);
    Fe v = fe_sub(fe_neg(fe_mul(ED_D, fe_sq(u1))), u2_sqr);

    Fe invsqrt;
    bool was_square = fe_sqrt_ratio_m1(invsqrt, fe_one(), fe_mul(v, u2_sqr));

    Fe den_x = fe_mul(invsqrt, u2);
    Fe den_y = fe_mul(fe_mul(invsqrt, den_x), v);

    Fe x = fe_abs(fe_mul(fe_add(s, s), den_x));
    Fe y = fe_mul(u1, den_y);
    Fe t = fe_mul(x, y);

    if (!was_square || fe_is_negative(t) || fe_is_zero(y)) return false;
    out = {x, y, fe_one(), t};
    return true;
}

// ---- variable-time scalar multiplication ----

// 4-bit windows of a little-endian scalar, most significant first.
inline int scalar_nibble(const uint8_t sc[32], int pos) {
    return (sc[pos >> 1] >> (4 * (pos & 1))) & 0xF;
}

struct NibbleTable {
    GeCached multiples[15];  // 1P .. 15P

    explicit NibbleTable(const GeP3& p) {
        GeP3 cur = p;
        multiples[0] = ge_to_cached(cur);
        for (int i = 1; i < 15; i++) {
            cur = ge_p1p1_to_p3(ge_add_p1p1(cur, multiples[0]));
            multiples[i] = ge_to_cached(cur);
        }
    }
};

// sum of scalars[i] * tables[i], shared doublings.
inline GeP3 ge_straus(const uint8_t* const* scalars, const NibbleTable* const* tables, int k) {
    GeP3 acc = ge_identity();
    bool started = false;
    for (int pos = 63; pos >= 0; pos--) {
        if (started) {
            GeP1P1 d = ge_dbl_p1p1(acc);
            acc = ge_p1p1_to_p3(d);
            d = ge_dbl_p1p1(acc);
            acc = ge_p1p1_to_p3(d);
            d = ge_dbl_p1p1(acc);
            acc = ge_p1p1_to_p3(d);
            d = ge_dbl_p1p1(acc);
            acc = ge_p1p1_to_p3(d);
        }
        for (int i = 0; i < k; i++) {
            int dig = scalar_nibble(scalars[i], pos);
            if (dig) {
                acc = ge_p1p1_to_p3(ge_add_p1p1(acc, tables[i]->multiples[dig - 1]));
                started = true;
            }
        }
    }
    return acc;
}

inline GeP3 ge_scalar_mul(const uint8_t sc[32], const GeP3& p) {
    NibbleTable t(p);
    const uint8_t* s[1] = {sc};
    const NibbleTable* ts[1] = {&t};
    return ge_straus(s, ts, 1);
}

// Fixed-base table with 8-bit windows: 32 windows x 255 entries. Build cost
// is amortized over many multiplications against the same base.
struct FixedBaseTable {
    std::vector<GeCached> entries;  // [window * 255 + (digit - 1)]

    explicit FixedBaseTable(const GeP3& base) {
        entries.resize(32 * 255);
        GeP3 window_base = base;  // 2^(8w) * base
        for (int w = 0; w < 32; w++) {
            GeP3 cur = window_base;
            GeCached unit = ge_to_cached(window_base);
            entries[w * 255] = unit;
            for (int d = 1; d < 255; d++) {
                cur = ge_p1p1_to_p3(ge_add_p1p1(cur, unit));
                entries[w * 255 + d] = ge_to_cached(cur);
            }
            if (w < 31) {
                for (int i = 0; i < 8; i++) window_base = ge_dbl(window_base);
            }
        }
    }

    void mul_accum(const uint8_t sc[32], GeP3& acc) const {
        for (int w = 0; w < 32; w++) {
            int d = sc[w];
            if (d) acc = ge_p1p1_to_p3(ge_add_p1p1(acc, entries[w * 255 + d - 1]));
        }
    }
};

}  // namespace mvno::curve
