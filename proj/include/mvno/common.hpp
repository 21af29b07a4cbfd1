#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mvno {

using Bytes = std::vector<uint8_t>;
using ByteSpan = std::span<const uint8_t>;
using Bytes32 = std::array<uint8_t, 32>;
using Bytes64 = std::array<uint8_t, 64>;

inline Bytes to_bytes(ByteSpan s) { return Bytes(s.begin(), s.end()); }

inline ByteSpan as_span(const std::string& s) {
    return ByteSpan(reinterpret_cast<const uint8_t*>(s.data()), s.size());
}

inline void append(Bytes& out, ByteSpan s) { out.insert(out.end(), s.begin(), s.end()); }
inline void append(Bytes& out, const std::string& s) { append(out, as_span(s)); }

inline void append_u16_be(Bytes& out, uint16_t v) {
    out.push_back(uint8_t(v >> 8));
    out.push_back(uint8_t(v));
}

inline void append_u32_be(Bytes& out, uint32_t v) {
    for (int i = 3; i >= 0; i--) out.push_back(uint8_t(v >> (8 * i)));
}

inline void append_u64_be(Bytes& out, uint64_t v) {
    for (int i = 7; i >= 0; i--) out.push_back(uint8_t(v >> (8 * i)));
}

std::string to_hex(ByteSpan data);
Bytes from_hex(const std::string& hex);  // throws std::invalid_argument on bad input

// Error codes shared across the protocol stack. All verification failures at
// CN/gNB collapse to a single opaque abort on the wire; these codes exist only
// in local results and transcripts.
enum class Err : uint8_t {
    StaleTimestamp,
    Duplicate,
    BadCertificate,
    ExpiredCertificate,
    BadSignature,
    BadProof,
    NotInList,
    NoUid,
    DecryptFail,
    AckMismatch,
    DuplicateGnb,
    DuplicateUser,
    UnknownUser,
    UnknownTag,
    VersionRegression,
    DoubleSetup,
    InvalidAdm,
    TrapdoorMismatch,
    UnsupportedLevel,
    ConfigInvalid,
};

const char* err_name(Err e);

// Minimal expected-style result. Protocol aborts are ordinary control flow in
// adversarial runs, so no exceptions on that path.
template <typename T>
class Result {
  public:
    Result(T v) : v_(std::move(v)) {}
    Result(Err e) : v_(e) {}

    bool ok() const { return std::holds_alternative<T>(v_); }
    explicit operator bool() const { return ok(); }

    T& value() { return std::get<T>(v_); }
    const T& value() const { return std::get<T>(v_); }
    Err error() const { return std::get<Err>(v_); }

  private:
    std::variant<T, Err> v_;
};

struct Unit {};
using Status = Result<Unit>;

inline Status ok_status() { return Status(Unit{}); }

}  // namespace mvno
