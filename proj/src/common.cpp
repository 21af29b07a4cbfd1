#include "mvno/common.hpp"

namespace mvno {

std::string to_hex(ByteSpan data) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(data.size() * 2);
    for (uint8_t b : data) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xF]);
    }
    return out;
}

namespace {
int hex_val(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}
}  // namespace

Bytes from_hex(const std::string& hex) {
    if (hex.size() % 2 != 0) throw std::invalid_argument("odd hex length");
    Bytes out(hex.size() / 2);
    for (size_t i = 0; i < out.size(); i++) {
        int hi = hex_val(hex[2 * i]), lo = hex_val(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("bad hex digit");
        out[i] = uint8_t(hi << 4 | lo);
    }
    return out;
}

const char* err_name(Err e) {
    switch (e) {
        case Err::StaleTimestamp: return "StaleTimestamp";
        case Err::Duplicate: return "Duplicate";
        case Err::BadCertificate: return "BadCertificate";
        case Err::ExpiredCertificate: return "ExpiredCertificate";
        case Err::BadSignature: return "BadSignature";
        case Err::BadProof: return "BadProof";
        case Err::NotInList: return "NotInList";
        case Err::NoUid: return "NoUid";
        case Err::DecryptFail: return "DecryptFail";
        case Err::AckMismatch: return "AckMismatch";
        case Err::DuplicateGnb: return "DuplicateGnb";
        case Err::DuplicateUser: return "DuplicateUser";
        case Err::UnknownUser: return "UnknownUser";
        case Err::UnknownTag: return "UnknownTag";
        case Err::VersionRegression: return "VersionRegression";
        case Err::DoubleSetup: return "DoubleSetup";
        case Err::InvalidAdm: return "InvalidAdm";
        case Err::TrapdoorMismatch: return "TrapdoorMismatch";
        case Err::UnsupportedLevel: return "UnsupportedLevel";
        case Err::ConfigInvalid: return "ConfigInvalid";
    }
    return "Unknown";
}

}  // namespace mvno
