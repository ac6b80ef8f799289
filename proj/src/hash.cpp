// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#include <pocval/hash.hpp>

#include <openssl/evp.h>

#include <stdexcept>

namespace pocval
{
std::array<std::uint8_t, 32> sha256_bytes(const std::string& data)
{
    std::array<std::uint8_t, 32> out{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), out.data(), &len, EVP_sha256(), nullptr) != 1 || len != 32)
        throw std::runtime_error("sha256 failed");
    return out;
}

std::string sha256_hex(const std::string& data)
{
    static constexpr char hex[] = "0123456789abcdef";
    const auto bytes = sha256_bytes(data);
    std::string out;
    out.reserve(64);
    for (auto b : bytes)
    {
        out.push_back(hex[b >> 4]);
        out.push_back(hex[b & 0xf]);
    }
    return out;
}

u256 sha256_word(const std::string& data)
{
    const auto bytes = sha256_bytes(data);
    u256 v = 0;
    for (auto b : bytes)
        v = (v << 8) | b;
    return v;
}

}  // namespace pocval
