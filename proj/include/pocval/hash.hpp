// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <pocval/u256.hpp>

#include <array>
#include <cstdint>
#include <string>

namespace pocval
{
std::array<std::uint8_t, 32> sha256_bytes(const std::string& data);
std::string sha256_hex(const std::string& data);

// First 32 hash bytes interpreted big-endian. Backs keccak()/blockhash() in
// the VM: stable, uniform, and with no pretense of being the real thing.
u256 sha256_word(const std::string& data);

}  // namespace pocval
